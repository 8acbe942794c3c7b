pub fn average(a: f64, b: f64) -> f64 {
    (a + b) / 2.0
}
