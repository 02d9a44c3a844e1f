"""Helper utilities for Streamlit UI rendering."""


