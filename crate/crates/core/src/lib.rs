pub mod cli;
pub mod perm;
pub mod suite;
pub mod words;
pub mod matgrp;
pub mod treeaut;
