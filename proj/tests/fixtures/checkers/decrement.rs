pub fn decrement(x: u32) -> u32 {
    x - 1
}
