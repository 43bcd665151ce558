// bench helper crate
