//! Incremental CSV output with checkpoint/resume for long scans.
//!
//! When `MAXREFL_CHECKPOINT_DIR` is set and the scan writes CSV to a file,
//! rows are appended chunk by chunk and `scan.ckpt` in that directory
//! records the last completed |d|. A rerun of the same command picks up
//! after the checkpoint and appends to the same file; the checkpoint is
//! removed once the scan completes.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use maxrefl_core::arith::{csv_row, scan_with_progress, ScanConfig, CSV_HEADER};
use maxrefl_core::error::Error;

/// Environment variable naming the checkpoint directory.
pub const CHECKPOINT_DIR_ENV: &str = "MAXREFL_CHECKPOINT_DIR";

pub struct CheckpointContext {
    out_path: PathBuf,
    ckpt_path: PathBuf,
    resume_after: Option<u64>,
}

/// Decide whether this invocation runs in checkpointed mode.
pub fn checkpoint_setup(
    out: &Option<PathBuf>,
    is_csv: bool,
) -> Result<Option<CheckpointContext>, Error> {
    let Some(dir) = std::env::var_os(CHECKPOINT_DIR_ENV) else {
        return Ok(None);
    };
    let Some(out_path) = out else {
        eprintln!("note: {CHECKPOINT_DIR_ENV} is set but --out is missing; checkpointing disabled");
        return Ok(None);
    };
    if !is_csv {
        eprintln!(
            "note: {CHECKPOINT_DIR_ENV} is set but checkpointing needs --format csv; disabled"
        );
        return Ok(None);
    }
    let dir = PathBuf::from(dir);
    fs::create_dir_all(&dir)?;
    let ckpt_path = dir.join("scan.ckpt");
    let resume_after = if ckpt_path.exists() && out_path.exists() {
        let content = fs::read_to_string(&ckpt_path)?;
        let v: u64 = content.trim().parse().map_err(|_| {
            Error::Parse(format!("corrupt checkpoint file {}", ckpt_path.display()))
        })?;
        Some(v)
    } else {
        None
    };
    Ok(Some(CheckpointContext {
        out_path: out_path.clone(),
        ckpt_path,
        resume_after,
    }))
}

/// Run the scan, streaming CSV rows and updating the checkpoint after every
/// chunk.
pub fn run_checkpointed(config: &mut ScanConfig, ctx: CheckpointContext) -> Result<i32, Error> {
    config.resume_after = ctx.resume_after;
    let mut file = match ctx.resume_after {
        Some(after) => {
            eprintln!("scan: resuming after |d| = {after}");
            fs::OpenOptions::new().append(true).open(&ctx.out_path)?
        }
        None => {
            let mut f = fs::File::create(&ctx.out_path)?;
            writeln!(f, "{CSV_HEADER}")?;
            f
        }
    };
    let ckpt_tmp = ctx.ckpt_path.with_extension("tmp");
    let report = scan_with_progress(config, |done, chunk| {
        for rec in chunk {
            writeln!(file, "{}", csv_row(rec))?;
        }
        file.flush()?;
        fs::write(&ckpt_tmp, format!("{done}\n"))?;
        fs::rename(&ckpt_tmp, &ctx.ckpt_path)?;
        eprintln!("scan: completed |d| <= {done}");
        Ok(())
    })?;
    let _ = fs::remove_file(&ctx.ckpt_path);
    eprintln!(
        "scan: finished; {} records ({} passing) written to {}",
        report.n_scanned,
        report.n_passing,
        ctx.out_path.display()
    );
    Ok(0)
}
