//! Oracles and helpers shared by the integration tests. Everything here is
//! written independently of the library code it checks.

#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

/// The 62 simultaneous decimal/binary palindromes below 10^18, ascending.
pub const DECIMAL_BINARY: [u64; 62] = [
    1, 3, 5, 7, 9, 33, 99, 313, 585, 717, 7447, 9009, 15351, 32223, 39993, 53235, 53835, 73737, 585585,
    1758571, 1934391, 1979791, 3129213, 5071705, 5259525, 5841485, 13500531, 719848917, 910373019,
    939474939, 1290880921, 7451111547, 10050905001, 18462126481, 32479297423, 75015151057,
    110948849011, 136525525631, 1234104014321, 1413899983141, 1474922294741, 1792704072971,
    1794096904971, 1999925299991, 5652622262565, 7227526257227, 7284717174827, 9484874784849,
    34141388314143, 552212535212255, 933138363831339, 1793770770773971, 3148955775598413,
    10457587478575401, 10819671917691801, 18279440804497281, 34104482028440143, 37078796869787073,
    37629927072992673, 55952637073625955, 161206152251602161, 313558153351855313,
];

/// Digits of `n` in base `b`, least significant first, by repeated division.
pub fn naive_digits(mut n: u128, b: u128) -> Vec<u128> {
    let mut d = Vec::new();
    loop {
        d.push(n % b);
        n /= b;
        if n == 0 {
            return d;
        }
    }
}

pub fn naive_is_palindrome(n: u128, b: u128) -> bool {
    let d = naive_digits(n, b);
    d.iter().eq(d.iter().rev())
}

/// Palindrome test by building the reversed number arithmetically.
pub fn reversal_is_palindrome(n: u64, b: u64) -> bool {
    let (mut x, mut r) = (n, 0u64);
    while x > 0 {
        r = r * b + x % b;
        x /= b;
    }
    r == n
}

/// Runs the command-line tool.
pub fn simpal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simpal"))
        .args(args)
        .env_remove("SIMPAL_PRECISION_BITS")
        .env_remove("RUST_LOG")
        .output()
        .expect("spawn simpal")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

/// The integers in the `value` column of a CSV report.
pub fn csv_values(text: &str) -> Vec<u128> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("value"), "CSV header");
    lines.map(|l| l.parse().expect("integer row")).collect()
}

/// Removes the `timing` line of a JSON report.
pub fn without_timing(json: &str) -> String {
    json.lines().filter(|l| !l.trim_start().starts_with("\"timing\"")).collect::<Vec<_>>().join("\n")
}

pub fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}
