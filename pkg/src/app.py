from __future__ import annotations

"""
Streamlit viewer for the supercharacter engine.

Thin front end over:
- table.build_table
- restrict.restrict / restrict.restrict_step
- utils.parse_label / utils.format_label / utils.to_json
"""

import json
from typing import Dict, Optional

import streamlit as st
from dotenv import load_dotenv

# Ensure project root is on sys.path so "src" package imports work under Streamlit
import sys
from pathlib import Path
PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from src.chars import degree_exponent
from src.config import load_config
from src.core import interpolating_poset
from src.errors import EngineError
from src.field import field_of_order
from src.reps import CHARACTER, RepStyle
from src.restrict import FIRST_ROW, LAST_COLUMN, restrict, restrict_step
from src.table import build_table
from src.utils import format_label, format_value, parse_label, to_json
from src.streamlit_ui.cards import render_decomposition, render_table

STEP = "step"


def page_config() -> None:
    st.set_page_config(
        page_title="Supercharacter viewer",
        page_icon="🧮",
        layout="wide",
        initial_sidebar_state="expanded",
    )


def sidebar_inputs() -> Dict[str, object]:
    """Render sidebar controls and return a dictionary of parameters."""
    cfg = load_config()
    with st.sidebar:
        st.header("Group")
        n = st.number_input(label="n", min_value=1, max_value=7, value=3, step=1)
        m = st.number_input(label="m (0 = U_n)", min_value=0, max_value=int(n), value=0, step=1)
        q = st.text_input(label="q", value=cfg.default_q, help="Field order, e.g. 2, 3, 4 or 2^2")
        style = st.selectbox(label="Representatives", options=[s.value for s in RepStyle], index=2)
        evaluator = st.selectbox(label="Evaluator", options=["auto", "general", "un", "comb", "path", "oracle"], index=0)
        threads = st.number_input(label="Threads", min_value=1, max_value=32, value=cfg.threads, step=1)

        st.header("Restriction")
        label = st.text_input(label="λ (arc notation)", value="1~3", placeholder="e.g. 1~5|2~6|3~4")
        embedding = st.radio(label="Embedding", options=[FIRST_ROW, LAST_COLUMN, STEP], index=0)

        submit = st.button("Compute", type="primary")

    return {
        "n": int(n),
        "m": int(m),
        "q": q,
        "style": style,
        "evaluator": evaluator,
        "threads": int(threads),
        "label": label,
        "embedding": embedding,
        "budget": cfg.oracle_budget,
        "submit": submit,
    }


def validate_inputs(params: Dict[str, object]) -> Optional[str]:
    """Return an error message if inputs are invalid, else None."""
    if params["style"] == RepStyle.UN_CANONICAL.value and params["m"] not in (0, 1):
        return "un_canonical representatives need the chain U_n (m = 0)."
    if params["embedding"] != STEP and params["label"] and params["m"] != 0:
        return "First-row and last-column restriction start from U_n; set m = 0 or pick 'step'."
    if params["embedding"] == STEP and params["m"] >= params["n"]:  # type: ignore[operator]
        return "A restriction step needs m < n."
    return None


def _table_payload(params: Dict[str, object]) -> Dict[str, object]:
    fld = field_of_order(str(params["q"]))
    poset = interpolating_poset(int(params["n"]), int(params["m"]))  # type: ignore[arg-type]
    result = build_table(
        poset, fld, str(params["style"]), str(params["evaluator"]),
        threads=int(params["threads"]), budget=int(params["budget"]),  # type: ignore[arg-type]
    )
    payload = result.to_payload(format_label)
    payload["display"] = [[format_value(v.value) for v in row] for row in result.values]
    return payload


def _restriction_payload(params: Dict[str, object]) -> Dict[str, object]:
    fld = field_of_order(str(params["q"]))
    poset = interpolating_poset(int(params["n"]), int(params["m"]))  # type: ignore[arg-type]
    lam = parse_label(str(params["label"]), poset, fld, str(params["style"]), CHARACTER)
    if params["embedding"] == STEP:
        result = restrict_step(lam, budget=int(params["budget"]))  # type: ignore[arg-type]
    else:
        result = restrict(lam, str(params["embedding"]))  # type: ignore[arg-type]
    return {
        "schema": "1",
        "input": format_label(lam),
        "embedding": params["embedding"],
        "terms": [
            {"coeff": c, "label": format_label(mu), "degree": fld.q ** degree_exponent(mu.functional)}
            for mu, c in result.items()
        ],
    }


def main() -> None:
    load_dotenv(override=False)
    page_config()

    st.title("🧮 Supercharacters of U_n(F_q) and U_(m)")
    st.caption("Exact supercharacter tables and restriction rules")

    params = sidebar_inputs()

    if not params["submit"]:
        st.info("Pick a group and click Compute.")
        return

    error = validate_inputs(params)
    if error:
        st.error(error)
        return

    with st.spinner("Computing..."):
        try:
            table = _table_payload(params)
            decomposition = _restriction_payload(params) if params["label"] else None
        except EngineError as exc:
            st.error(f"Computation failed: {exc}")
            return

    with st.expander("Raw JSON output", expanded=False):
        export = {k: v for k, v in table.items() if k != "display"}
        st.code(to_json(export, pretty=True), language="json")
        st.download_button(
            label="Download JSON",
            file_name="table.json",
            mime="application/json",
            data=json.dumps(export, ensure_ascii=False, indent=2),
        )

    render_table(table)
    if decomposition is not None:
        render_decomposition(decomposition)


if __name__ == "__main__":  # pragma: no cover
    main()
