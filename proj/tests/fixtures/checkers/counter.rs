static mut COUNTER: i32 = 0;

pub fn tally(x: i32) -> i32 {
    unsafe {
        if !(-1000..=1000).contains(&x) {
            return COUNTER;
        }
        COUNTER += x;
        COUNTER
    }
}
