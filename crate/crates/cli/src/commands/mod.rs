pub mod algebra;
pub mod curves;
pub mod numeric;
