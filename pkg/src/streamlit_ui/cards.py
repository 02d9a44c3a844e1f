from __future__ import annotations

from typing import Dict, List

import streamlit as st


def render_table(payload: Dict[str, object]) -> None:
    """Render a supercharacter table payload as a grid.

    Expects the shape produced by ``TableResult.to_payload``: {"classes": [...], "rows": [{"label", "values"}]}
    plus a parallel "display" list of value strings per row.
    """
    classes: List[str] = payload.get("classes", [])  # type: ignore[assignment]
    rows: List[Dict[str, object]] = payload.get("rows", [])  # type: ignore[assignment]
    display: List[List[str]] = payload.get("display", [])  # type: ignore[assignment]
    if not rows:
        st.warning("No supercharacters to display.")
        return

    st.subheader(f"Supercharacter table ({len(rows)} × {len(classes)})")
    data = {"λ": [row["label"] for row in rows]}
    for c, name in enumerate(classes):
        data[name] = [values[c] for values in display]
    st.dataframe(data, use_container_width=True, hide_index=True)


def render_decomposition(payload: Dict[str, object]) -> None:
    """Render restriction terms as cards, two per row."""
    terms: List[Dict[str, object]] = payload.get("terms", [])  # type: ignore[assignment]
    if not terms:
        st.warning("No terms to display.")
        return

    st.subheader(f"Res χ^{payload.get('input')} ({payload.get('embedding')})")
    cols_per_row = 2
    for i in range(0, len(terms), cols_per_row):
        cols = st.columns(cols_per_row)
        for j, term in enumerate(terms[i : i + cols_per_row]):
            with cols[j]:
                with st.container(border=True):
                    st.markdown(f"**{term['coeff']}** · `{term['label']}`")
                    if term.get("degree") is not None:
                        st.caption(f"χ(1) = {term['degree']}")
