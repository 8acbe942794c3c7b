pub fn popcount(x: u32) -> i32 {
    x.count_ones() as i32
}
