//! Discriminantal symmetry data (under construction).
