use pyo3::prelude::*;

#[pymodule]
fn dstar(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
