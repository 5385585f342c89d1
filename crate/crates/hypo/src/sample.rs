//! Seeded random instance generation (under construction).
