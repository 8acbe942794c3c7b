pub fn shout(s: &String) -> usize {
    s.len()
}
