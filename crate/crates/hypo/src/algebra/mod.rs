//! Quiver algebras of arrangements (under construction).
