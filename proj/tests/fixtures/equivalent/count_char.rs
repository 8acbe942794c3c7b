pub fn count_char(s: &str, c: u8) -> i32 {
    s.bytes().filter(|&b| b == c).count() as i32
}
