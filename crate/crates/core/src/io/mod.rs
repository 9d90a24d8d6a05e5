pub mod corpus;
pub mod format;
pub mod report;
