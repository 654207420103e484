//! Irreducible characters of symmetric groups via the Murnaghan-Nakayama rule,
//! and Kostka numbers via horizontal strips.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::{Partition, SymError};

type CharKey = (Vec<usize>, Vec<usize>);

fn char_memo() -> &'static RwLock<HashMap<CharKey, i64>> {
    static MEMO: OnceLock<RwLock<HashMap<CharKey, i64>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Value of the irreducible character `chi^lambda` on the conjugacy class of
/// cycle type `mu`.
pub fn character_value(lambda: &Partition, mu: &Partition) -> Result<i64, SymError> {
    if lambda.size() != mu.size() {
        return Err(SymError::SizeMismatch {
            left: lambda.size(),
            right: mu.size(),
        });
    }
    Ok(mn(lambda.parts(), mu.parts()))
}

fn mn(lambda: &[usize], mu: &[usize]) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = char_memo().read().expect("memo poisoned").get(&key) {
        return v;
    }
    let r = mu[0];
    let rest = &mu[1..];
    let k = lambda.len();
    let beta: Vec<usize> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (k - 1 - i))
        .collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let len = nb.len();
        let shape: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&shape, rest);
    }
    char_memo()
        .write()
        .expect("memo poisoned")
        .insert(key, total);
    total
}

/// Kostka number `K_{lambda, mu}`: the number of semistandard tableaux of shape
/// `lambda` and content `mu`, equivalently the multiplicity of `V_lambda` in the
/// permutation module induced from the Young subgroup `S_mu`.
pub fn kostka(lambda: &Partition, mu: &Partition) -> u64 {
    if lambda.size() != mu.size() {
        return 0;
    }
    let mut memo = HashMap::new();
    kostka_rec(lambda.parts(), mu.parts(), &mut memo)
}

fn kostka_rec(
    lambda: &[usize],
    content: &[usize],
    memo: &mut HashMap<(Vec<usize>, usize), u64>,
) -> u64 {
    if content.is_empty() {
        return u64::from(lambda.is_empty());
    }
    let key = (lambda.to_vec(), content.len());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    // Remove a horizontal strip of size equal to the last content entry.
    let strip = content[content.len() - 1];
    let rest = &content[..content.len() - 1];
    let mut total = 0;
    let mut inner = lambda.to_vec();
    strips(lambda, 0, strip, &mut inner, &mut |nu| {
        let trimmed: Vec<usize> = nu.iter().copied().filter(|&p| p > 0).collect();
        total += kostka_rec(&trimmed, rest, memo);
    });
    memo.insert(key, total);
    total
}

/// Visits every `nu` with `lambda / nu` a horizontal strip of size `left`.
fn strips(
    lambda: &[usize],
    row: usize,
    left: usize,
    nu: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    if row == lambda.len() {
        if left == 0 {
            visit(nu);
        }
        return;
    }
    let lower = lambda.get(row + 1).copied().unwrap_or(0);
    let max_remove = (lambda[row] - lower).min(left);
    for take in 0..=max_remove {
        nu[row] = lambda[row] - take;
        strips(lambda, row + 1, left - take, nu, visit);
    }
    nu[row] = lambda[row];
}
