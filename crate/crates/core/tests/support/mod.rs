pub mod corpora;
pub mod oracle;
