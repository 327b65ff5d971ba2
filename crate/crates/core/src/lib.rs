#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod exact;
pub mod forms;
pub mod quadric;
pub mod cover;
pub mod severi;
pub mod lattice;
pub mod seeker;
