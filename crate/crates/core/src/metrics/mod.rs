//! Corpus-level BLEU and chrF, plus the post-processing applied to system
//! output before scoring.

mod bleu;
mod chrf;
mod postprocess;

pub use bleu::{bleu, bleu_details, BleuConfig, BleuScore};
pub use chrf::{chrf, chrf_details, Averaging, ChrfConfig, ChrfScore, OrderStats};
pub use postprocess::{separate_punctuation, strip_segmentation, SegmentationMarker};

use crate::error::{Error, Result};

fn check_lengths(hypotheses: usize, references: usize) -> Result<()> {
    if hypotheses != references {
        return Err(Error::LengthMismatch {
            hypotheses,
            references,
        });
    }
    if hypotheses == 0 {
        return Err(Error::EmptyCorpus);
    }
    Ok(())
}
