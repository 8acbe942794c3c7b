pub fn is_leap(year: i32) -> i32 {
    (year % 4 == 0 && (year % 100 != 0 || year % 400 == 0)) as i32
}
