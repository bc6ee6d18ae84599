#![allow(dead_code)]

pub mod answers;
pub mod fixtures;
pub mod labeler;
pub mod naive_regex;
pub mod recount;
