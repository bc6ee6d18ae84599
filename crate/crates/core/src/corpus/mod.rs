//! Stack Exchange dump ingestion, corpus filtering and sampling.

pub mod bundle;
pub mod dump;
pub mod manifest;
pub mod sample;
pub mod synth;

pub use bundle::{answer_source_id, assemble_bundles, post_id_of, assemble_with, body_qualifies, corpus_filter, Assembly, PostBundle, Selection};
pub use dump::{Date, PostRecord, PostStream, PostType, StreamStats};
pub use manifest::{read_manifest, write_manifest, ManifestEntry};
pub use sample::{quotas, stratified_sample, Quotas, Sample, Sampleable, Stratum, RECENT_YEARS};
pub use synth::{GroundTruth, SynthConfig, SynthDump};
