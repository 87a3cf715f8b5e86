pub use rieszlab_core as core;
