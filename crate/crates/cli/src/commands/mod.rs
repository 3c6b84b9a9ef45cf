pub mod experiments;
pub mod grow;
pub mod plane;
pub mod survey;
