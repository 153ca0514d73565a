//! File formats (placeholder).
