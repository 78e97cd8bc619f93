//! Report schema and file formats behind the `bwlab` binary, exposed as a
//! library so integration tests and other frontends can read and write the
//! same documents.

pub mod report;
