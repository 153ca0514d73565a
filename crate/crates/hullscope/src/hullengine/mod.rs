//! Hull engine (placeholder).
