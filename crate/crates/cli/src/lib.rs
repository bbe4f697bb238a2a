//! Job-file driver for the `autoarc` library.

pub mod error;
pub mod job;
pub mod report;

pub use error::{JobError, Result};
pub use job::{Format, Job, Task};
pub use report::{render_json, render_report, render_text, run, run_job, Report};
