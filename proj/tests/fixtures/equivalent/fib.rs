pub fn fib(n: u32) -> u32 {
    let (mut a, mut b) = (0u32, 1u32);
    for _ in 0..n % 64 {
        let t = a.wrapping_add(b);
        a = b;
        b = t;
    }
    a
}
