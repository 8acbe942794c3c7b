pub fn scale(values: &mut [i32], factor: i32) {
    for v in values.iter_mut().take(4) {
        *v = *v % 1000 * (factor % 1000);
    }
}
