// Copyright 2026 The transcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "harness_runtime.h"

namespace transcheck::checkers::internal {

const char kDriverRuntime[] = R"TCRT(
#include <fcntl.h>
#include <math.h>
#include <setjmp.h>
#include <signal.h>
#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>
#include <sys/mman.h>
#include <sys/time.h>
#include <unistd.h>

enum {
  TC_I8, TC_I16, TC_I32, TC_I64, TC_U8, TC_U16, TC_U32, TC_U64,
  TC_F32, TC_F64, TC_BOOL, TC_CHAR
};
enum { TC_SCALAR, TC_ARRAY, TC_STRING };

static const size_t tc_kind_size[] = {1, 2, 4, 8, 1, 2, 4, 8, 4, 8, 1, 1};

static sigjmp_buf tc_jmp;
static volatile sig_atomic_t tc_active;
static volatile sig_atomic_t tc_sig;
static volatile int tc_exit_code;
static volatile sig_atomic_t tc_in_b;
static struct sigaction tc_old[65];
static const int tc_sigs[] = {SIGSEGV, SIGFPE, SIGBUS, SIGILL, SIGABRT, SIGTRAP, SIGPROF};

static void tc_on_signal(int sig) {
  if (tc_active) {
    tc_active = 0;
    tc_sig = sig;
    siglongjmp(tc_jmp, 1);
  }
  if (sig == SIGPROF) return;
  sigaction(sig, &tc_old[sig], NULL);
  raise(sig);
}

void tc_trap_exit(int code) {
  if (tc_active) {
    tc_active = 0;
    tc_sig = -1;
    tc_exit_code = code;
    siglongjmp(tc_jmp, 1);
  }
  _exit(code);
}

static void tc_install(void) {
  static char altstack[1 << 18];
  stack_t ss;
  memset(&ss, 0, sizeof ss);
  ss.ss_sp = altstack;
  ss.ss_size = sizeof altstack;
  sigaltstack(&ss, NULL);
  struct sigaction sa;
  memset(&sa, 0, sizeof sa);
  sa.sa_handler = tc_on_signal;
  sa.sa_flags = SA_ONSTACK;
  sigemptyset(&sa.sa_mask);
  for (size_t i = 0; i < sizeof tc_sigs / sizeof tc_sigs[0]; ++i) {
    sigaction(tc_sigs[i], &sa, &tc_old[tc_sigs[i]]);
  }
}

static void tc_arm(long ms) {
  struct itimerval it;
  memset(&it, 0, sizeof it);
  it.it_value.tv_sec = ms / 1000;
  it.it_value.tv_usec = (ms % 1000) * 1000;
  setitimer(ITIMER_PROF, &it, NULL);
}

static void tc_disarm(void) {
  struct itimerval it;
  memset(&it, 0, sizeof it);
  setitimer(ITIMER_PROF, &it, NULL);
}

/* 0 when fn returned; otherwise the signal number, or -1 for exit(). */
static int tc_guarded(void (*fn)(void), long cpu_ms, int in_b) {
  tc_sig = 0;
  if (sigsetjmp(tc_jmp, 1) != 0) {
    tc_disarm();
    tc_in_b = 0;
    return tc_sig;
  }
  tc_in_b = in_b;
  tc_arm(cpu_ms);
  tc_active = 1;
  fn();
  tc_active = 0;
  tc_disarm();
  tc_in_b = 0;
  return 0;
}

static uint8_t *tc_alloc(size_t n) {
  size_t page = (size_t)sysconf(_SC_PAGESIZE);
  size_t body = (n + page - 1) / page * page;
  if (body == 0) body = page;
  uint8_t *base = mmap(NULL, body + page, PROT_READ | PROT_WRITE,
                       MAP_PRIVATE | MAP_ANONYMOUS, -1, 0);
  if (base == MAP_FAILED) abort();
  mprotect(base + body, page, PROT_NONE);
  return base + body - n;
}

static void tc_normalize(int shape, int kind, uint8_t *p, size_t n) {
  if (shape == TC_STRING) {
    for (size_t i = 0; i < n; ++i) p[i] &= 0x7f;
    if (n > 0) p[n - 1] = 0;
  } else if (kind == TC_BOOL) {
    for (size_t i = 0; i < n; ++i) p[i] &= 1;
  }
}

static int64_t tc_ordered(uint64_t bits, int width) {
  uint64_t sign = width == 8 ? 0x8000000000000000ull : 0x80000000ull;
  uint64_t mag = bits & (sign - 1);
  return (bits & sign) ? -(int64_t)mag : (int64_t)mag;
}

static int tc_eq_scalar(int kind, const uint8_t *a, const uint8_t *b) {
  if (kind == TC_F32 || kind == TC_F64) {
    int w = kind == TC_F64 ? 8 : 4;
    uint64_t ua = 0, ub = 0;
    memcpy(&ua, a, w);
    memcpy(&ub, b, w);
    double da, db;
    if (w == 8) { memcpy(&da, a, 8); memcpy(&db, b, 8); }
    else { float fa, fb; memcpy(&fa, a, 4); memcpy(&fb, b, 4); da = fa; db = fb; }
    if (isnan(da) && isnan(db)) return 1;
    if (ua == ub) return 1;
    if (TC_ULP == 0 || isnan(da) || isnan(db)) return 0;
    __int128 d = (__int128)tc_ordered(ua, w) - (__int128)tc_ordered(ub, w);
    if (d < 0) d = -d;
    return d <= (__int128)TC_ULP;
  }
  return memcmp(a, b, tc_kind_size[kind]) == 0;
}

static size_t tc_strlen(const uint8_t *p, size_t cap) {
  size_t i = 0;
  while (i < cap && p[i] != 0) ++i;
  return i;
}

static int tc_eq_field(int shape, int kind, const uint8_t *a, const uint8_t *b, size_t n) {
  if (shape == TC_STRING) {
    size_t la = tc_strlen(a, n), lb = tc_strlen(b, n);
    return la == lb && memcmp(a, b, la) == 0;
  }
  size_t es = tc_kind_size[kind];
  for (size_t i = 0; i < n; ++i) {
    if (!tc_eq_scalar(kind, a + i * es, b + i * es)) return 0;
  }
  return 1;
}

typedef struct { char *buf; size_t cap; size_t len; } tc_sb;

static void tc_sb_putc(tc_sb *s, char c) {
  if (s->len + 1 < s->cap) s->buf[s->len++] = c;
  s->buf[s->len] = 0;
}

static void tc_sb_puts(tc_sb *s, const char *t) {
  while (*t) tc_sb_putc(s, *t++);
}

static void tc_sb_printf(tc_sb *s, const char *fmt, ...) {
  char tmp[512];
  va_list ap;
  va_start(ap, fmt);
  vsnprintf(tmp, sizeof tmp, fmt, ap);
  va_end(ap);
  tc_sb_puts(s, tmp);
}

static void tc_sb_jstr(tc_sb *s, const char *t, size_t n) {
  tc_sb_putc(s, '"');
  for (size_t i = 0; i < n; ++i) {
    unsigned char c = (unsigned char)t[i];
    if (c == '"' || c == '\\') { tc_sb_putc(s, '\\'); tc_sb_putc(s, (char)c); }
    else if (c == '\n') tc_sb_puts(s, "\\n");
    else if (c < 0x20 || c >= 0x7f) tc_sb_printf(s, "\\u%04x", c);
    else tc_sb_putc(s, (char)c);
  }
  tc_sb_putc(s, '"');
}

static void tc_put_float(tc_sb *s, double v, int digits) {
  if (isnan(v)) tc_sb_puts(s, "nan");
  else if (isinf(v)) tc_sb_puts(s, v > 0 ? "inf" : "-inf");
  else tc_sb_printf(s, "%.*g", digits, v);
}

static void tc_put_scalar(tc_sb *s, int kind, const uint8_t *p) {
  switch (kind) {
    case TC_I8: case TC_CHAR: { int8_t v; memcpy(&v, p, 1); tc_sb_printf(s, "%d", v); break; }
    case TC_I16: { int16_t v; memcpy(&v, p, 2); tc_sb_printf(s, "%d", v); break; }
    case TC_I32: { int32_t v; memcpy(&v, p, 4); tc_sb_printf(s, "%d", v); break; }
    case TC_I64: { int64_t v; memcpy(&v, p, 8); tc_sb_printf(s, "%lld", (long long)v); break; }
    case TC_U8: { uint8_t v; memcpy(&v, p, 1); tc_sb_printf(s, "%u", v); break; }
    case TC_U16: { uint16_t v; memcpy(&v, p, 2); tc_sb_printf(s, "%u", v); break; }
    case TC_U32: { uint32_t v; memcpy(&v, p, 4); tc_sb_printf(s, "%u", v); break; }
    case TC_U64: { uint64_t v; memcpy(&v, p, 8); tc_sb_printf(s, "%llu", (unsigned long long)v); break; }
    case TC_F32: { float v; memcpy(&v, p, 4); tc_put_float(s, v, 9); break; }
    case TC_F64: { double v; memcpy(&v, p, 8); tc_put_float(s, v, 17); break; }
    case TC_BOOL: tc_sb_puts(s, (p[0] & 1) ? "true" : "false"); break;
  }
}

static void tc_put_field(tc_sb *s, int shape, int kind, const uint8_t *p, size_t n) {
  if (shape == TC_SCALAR) {
    tc_put_scalar(s, kind, p);
  } else if (shape == TC_STRING) {
    size_t len = tc_strlen(p, n);
    tc_sb_putc(s, '"');
    for (size_t i = 0; i < len; ++i) {
      unsigned char c = p[i];
      if (c == '"' || c == '\\') { tc_sb_putc(s, '\\'); tc_sb_putc(s, (char)c); }
      else if (c < 0x20 || c >= 0x7f) tc_sb_printf(s, "\\x%02x", c);
      else tc_sb_putc(s, (char)c);
    }
    tc_sb_putc(s, '"');
  } else {
    tc_sb_putc(s, '[');
    for (size_t i = 0; i < n; ++i) {
      if (i > 0) tc_sb_puts(s, ", ");
      tc_put_scalar(s, kind, p + i * tc_kind_size[kind]);
    }
    tc_sb_putc(s, ']');
  }
}

static char tc_rep_mem[1 << 20];
static char tc_val_mem[1 << 16];
static tc_sb tc_rep = {tc_rep_mem, sizeof tc_rep_mem, 0};
static int tc_first_item;

static void tc_item(const char *name, int shape, int kind, const uint8_t *p, size_t n) {
  tc_sb v = {tc_val_mem, sizeof tc_val_mem, 0};
  tc_put_field(&v, shape, kind, p, n);
  if (!tc_first_item) tc_sb_putc(&tc_rep, ',');
  tc_first_item = 0;
  tc_sb_puts(&tc_rep, "{\"name\":");
  tc_sb_jstr(&tc_rep, name, strlen(name));
  tc_sb_puts(&tc_rep, ",\"value\":");
  tc_sb_jstr(&tc_rep, v.buf, v.len);
  tc_sb_putc(&tc_rep, '}');
}

static void tc_write_report(void) {
  const char *path = getenv("TC_REPORT");
  int fd = path ? open(path, O_WRONLY | O_CREAT | O_TRUNC, 0644) : 2;
  if (fd < 0) fd = 2;
  size_t off = 0;
  while (off < tc_rep.len) {
    ssize_t w = write(fd, tc_rep.buf + off, tc_rep.len - off);
    if (w <= 0) break;
    off += (size_t)w;
  }
  if (fd != 2) close(fd);
}

static const char *tc_signal_name(int sig) {
  switch (sig) {
    case SIGSEGV: return "segmentation fault (SIGSEGV)";
    case SIGFPE: return "arithmetic exception (SIGFPE)";
    case SIGBUS: return "bus error (SIGBUS)";
    case SIGILL: return "illegal instruction (SIGILL)";
    case SIGABRT: return "abort (SIGABRT)";
    case SIGTRAP: return "trap (SIGTRAP)";
    default: return "signal";
  }
}
)TCRT";

const char kRustPrelude[] = R"TCRS(
#[allow(dead_code, unused_imports, unused_unsafe, unused_mut, unused_variables,
        unused_parens, non_snake_case, non_upper_case_globals, clippy::all)]
mod tc_ffi_shim {
use super::*;
use std::ffi::CStr;
use std::os::raw::c_char;

pub trait TcConv<T> {
    fn tc(self) -> T;
}

macro_rules! tc_num_row {
    ($s:ty; $($t:ty),*) => { $(
        impl TcConv<$t> for $s { #[inline] fn tc(self) -> $t { self as $t } }
    )* };
}
macro_rules! tc_num {
    ($($s:ty),*) => { $(
        tc_num_row!($s; i8, i16, i32, i64, i128, isize, u8, u16, u32, u64, u128, usize, f32, f64);
    )* };
}
tc_num!(i8, i16, i32, i64, i128, isize, u8, u16, u32, u64, u128, usize, f32, f64);

macro_rules! tc_bool {
    ($($t:ty),*) => { $(
        impl TcConv<bool> for $t { #[inline] fn tc(self) -> bool { self != (0 as $t) } }
        impl TcConv<$t> for bool { #[inline] fn tc(self) -> $t { (self as u8) as $t } }
    )* };
}
tc_bool!(i8, i16, i32, i64, i128, isize, u8, u16, u32, u64, u128, usize, f32, f64);
impl TcConv<bool> for bool { #[inline] fn tc(self) -> bool { self } }
impl TcConv<()> for () { #[inline] fn tc(self) {} }

macro_rules! tc_char {
    ($($t:ty),*) => { $(
        impl TcConv<char> for $t {
            #[inline] fn tc(self) -> char { char::from_u32(self as u32).unwrap_or('\0') }
        }
        impl TcConv<$t> for char { #[inline] fn tc(self) -> $t { self as u32 as $t } }
    )* };
}
tc_char!(i16, i32, i64, i128, isize, u16, u32, u64, u128, usize);
impl TcConv<char> for i8 { #[inline] fn tc(self) -> char { self as u8 as char } }
impl TcConv<char> for u8 { #[inline] fn tc(self) -> char { self as char } }
impl TcConv<i8> for char { #[inline] fn tc(self) -> i8 { self as u32 as i8 } }
impl TcConv<u8> for char { #[inline] fn tc(self) -> u8 { self as u32 as u8 } }
impl TcConv<char> for char { #[inline] fn tc(self) -> char { self } }

pub struct TcBuf<T> {
    pub p: *mut T,
    pub n: usize,
}

macro_rules! tc_buf {
    ($(($t:ty, $u:ty)),*) => { $(
        impl<'a> TcConv<&'a mut [$u]> for TcBuf<$t> {
            fn tc(self) -> &'a mut [$u] { unsafe { std::slice::from_raw_parts_mut(self.p as *mut $u, self.n) } }
        }
        impl<'a> TcConv<&'a [$u]> for TcBuf<$t> {
            fn tc(self) -> &'a [$u] { unsafe { std::slice::from_raw_parts(self.p as *const $u, self.n) } }
        }
        impl<'a> TcConv<Option<&'a mut [$u]>> for TcBuf<$t> {
            fn tc(self) -> Option<&'a mut [$u]> { Some(self.tc()) }
        }
        impl<'a> TcConv<Option<&'a [$u]>> for TcBuf<$t> {
            fn tc(self) -> Option<&'a [$u]> { Some(self.tc()) }
        }
        impl<'a> TcConv<&'a mut $u> for TcBuf<$t> {
            fn tc(self) -> &'a mut $u { unsafe { &mut *(self.p as *mut $u) } }
        }
        impl<'a> TcConv<&'a $u> for TcBuf<$t> {
            fn tc(self) -> &'a $u { unsafe { &*(self.p as *const $u) } }
        }
        impl<'a> TcConv<Option<&'a mut $u>> for TcBuf<$t> {
            fn tc(self) -> Option<&'a mut $u> { Some(self.tc()) }
        }
        impl<'a> TcConv<Option<&'a $u>> for TcBuf<$t> {
            fn tc(self) -> Option<&'a $u> { Some(self.tc()) }
        }
        impl TcConv<*mut $u> for TcBuf<$t> {
            fn tc(self) -> *mut $u { self.p as *mut $u }
        }
        impl TcConv<*const $u> for TcBuf<$t> {
            fn tc(self) -> *const $u { self.p as *const $u }
        }
        impl TcConv<Vec<$u>> for TcBuf<$t> {
            fn tc(self) -> Vec<$u> { unsafe { std::slice::from_raw_parts(self.p as *const $u, self.n).to_vec() } }
        }
        impl<'a, const N: usize> TcConv<&'a mut [$u; N]> for TcBuf<$t> {
            fn tc(self) -> &'a mut [$u; N] {
                assert!(self.n >= N, "array parameter longer than the harness buffer");
                unsafe { &mut *(self.p as *mut [$u; N]) }
            }
        }
        impl<'a, const N: usize> TcConv<&'a [$u; N]> for TcBuf<$t> {
            fn tc(self) -> &'a [$u; N] {
                assert!(self.n >= N, "array parameter longer than the harness buffer");
                unsafe { &*(self.p as *const [$u; N]) }
            }
        }
        impl<const N: usize> TcConv<[$u; N]> for TcBuf<$t> {
            fn tc(self) -> [$u; N] {
                assert!(self.n >= N, "array parameter longer than the harness buffer");
                unsafe { std::ptr::read(self.p as *const [$u; N]) }
            }
        }
    )* };
}
tc_buf!((i8, i8), (i16, i16), (i32, i32), (i64, i64), (u8, u8), (u16, u16),
        (u32, u32), (u64, u64), (f32, f32), (f64, f64), (bool, bool),
        (u64, usize), (i64, isize), (i8, u8), (u8, i8));

pub struct TcStr {
    pub p: *mut c_char,
    pub n: usize,
}

impl TcStr {
    fn len(&self) -> usize {
        let mut i = 0;
        while i < self.n && unsafe { *self.p.add(i) } != 0 {
            i += 1;
        }
        i
    }
    fn bytes<'a>(&self) -> &'a [u8] {
        unsafe { std::slice::from_raw_parts(self.p as *const u8, self.len()) }
    }
}

impl<'a> TcConv<&'a str> for TcStr {
    fn tc(self) -> &'a str { std::str::from_utf8(self.bytes()).unwrap_or("") }
}
impl<'a> TcConv<Option<&'a str>> for TcStr {
    fn tc(self) -> Option<&'a str> { Some(self.tc()) }
}
impl<'a> TcConv<&'a String> for TcStr {
    fn tc(self) -> &'a String { Box::leak(Box::new(String::from_utf8_lossy(self.bytes()).into_owned())) }
}
impl TcConv<String> for TcStr {
    fn tc(self) -> String { String::from_utf8_lossy(self.bytes()).into_owned() }
}
impl<'a> TcConv<&'a CStr> for TcStr {
    fn tc(self) -> &'a CStr { unsafe { CStr::from_ptr(self.p) } }
}
impl TcConv<*const c_char> for TcStr {
    fn tc(self) -> *const c_char { self.p as *const c_char }
}
impl TcConv<*mut c_char> for TcStr {
    fn tc(self) -> *mut c_char { self.p }
}
impl TcConv<*const u8> for TcStr {
    fn tc(self) -> *const u8 { self.p as *const u8 }
}
impl TcConv<*mut u8> for TcStr {
    fn tc(self) -> *mut u8 { self.p as *mut u8 }
}
impl<'a> TcConv<&'a [u8]> for TcStr {
    fn tc(self) -> &'a [u8] { self.bytes() }
}
impl<'a> TcConv<&'a [i8]> for TcStr {
    fn tc(self) -> &'a [i8] { unsafe { std::slice::from_raw_parts(self.p as *const i8, self.len()) } }
}
impl<'a> TcConv<&'a mut [u8]> for TcStr {
    fn tc(self) -> &'a mut [u8] { unsafe { std::slice::from_raw_parts_mut(self.p as *mut u8, self.n) } }
}
impl<'a> TcConv<&'a mut [i8]> for TcStr {
    fn tc(self) -> &'a mut [i8] { unsafe { std::slice::from_raw_parts_mut(self.p as *mut i8, self.n) } }
}
impl TcConv<Vec<u8>> for TcStr {
    fn tc(self) -> Vec<u8> { self.bytes().to_vec() }
}

static TC_PANIC: std::sync::Mutex<String> = std::sync::Mutex::new(String::new());

#[no_mangle]
pub extern "C" fn tc_b_init() {
    std::panic::set_hook(Box::new(|info| {
        let payload = info.payload();
        let msg = if let Some(s) = payload.downcast_ref::<&str>() {
            s.to_string()
        } else if let Some(s) = payload.downcast_ref::<String>() {
            s.clone()
        } else {
            String::from("panic")
        };
        let at = info.location().map(|l| format!(" (line {})", l.line())).unwrap_or_default();
        if let Ok(mut g) = TC_PANIC.lock() {
            *g = format!("{}{}", msg, at);
        }
    }));
}

#[no_mangle]
pub unsafe extern "C" fn tc_b_last_panic(buf: *mut c_char, cap: usize) -> usize {
    if cap == 0 {
        return 0;
    }
    let msg = TC_PANIC.lock().map(|g| g.clone()).unwrap_or_default();
    let n = msg.len().min(cap - 1);
    std::ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
    *buf.add(n) = 0;
    n
}
)TCRS";

}  // namespace transcheck::checkers::internal
