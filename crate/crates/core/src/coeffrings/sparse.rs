//! Sorted sparse coordinate vectors.

use crate::scalar::Scalar;

/// Coordinates of a ring element: `(basis index, coefficient)` pairs sorted
/// by index, with no zero coefficients.
pub type Coords<T> = Vec<(usize, T)>;

pub fn from_dense<T: Scalar>(dense: &[T]) -> Coords<T> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn to_dense<T: Scalar>(sparse: &[(usize, T)], len: usize) -> Vec<T> {
    let mut out = vec![T::zero(); len];
    for (i, c) in sparse {
        out[*i] = c.clone();
    }
    out
}

pub fn add<T: Scalar>(a: &[(usize, T)], b: &[(usize, T)]) -> Coords<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let s = a[i].1.clone() + &b[j].1;
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub fn neg<T: Scalar>(a: &[(usize, T)]) -> Coords<T> {
    a.iter().map(|(i, c)| (*i, -c.clone())).collect()
}

pub fn scale<T: Scalar>(a: &[(usize, T)], k: &T) -> Coords<T> {
    if k.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(i, c)| (*i, c.clone() * k)).collect()
}

/// Collects unsorted contributions into canonical form.
pub fn collect<T: Scalar>(mut items: Vec<(usize, T)>) -> Coords<T> {
    items.sort_by_key(|(i, _)| *i);
    let mut out: Coords<T> = Vec::with_capacity(items.len());
    for (i, c) in items {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += &c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}
