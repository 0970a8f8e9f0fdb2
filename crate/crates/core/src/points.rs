//! Enumeration of primitive integer points in a sup-norm box.
//!
//! A point is primitive when the gcd of its coordinates is 1 (the origin,
//! with gcd 0, is never primitive). Enumeration is in lexicographic order
//! with each coordinate running from `-r` to `r`; sharding by the leading
//! coordinate preserves that order when shards are concatenated.

use num_integer::Integer;

/// gcd of all coordinates, non-negative; 0 for the zero vector.
pub fn gcd_all(x: &[i64]) -> i64 {
    x.iter().fold(0i64, |g, &v| g.gcd(&v))
}

pub fn is_primitive(x: &[i64]) -> bool {
    gcd_all(x) == 1
}

/// All integer points of the box `|x_i| <= r`, in lex order.
pub struct BoxPoints {
    r: i64,
    cur: Option<Vec<i64>>,
}

impl BoxPoints {
    pub fn new(n: usize, r: i64) -> Self {
        assert!(r >= 0);
        let cur = if n == 0 {
            None
        } else {
            Some(vec![-r; n])
        };
        BoxPoints { r, cur }
    }
}

impl Iterator for BoxPoints {
    type Item = Vec<i64>;
    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.cur.clone()?;
        // Odometer step on the last coordinate.
        let cur = self.cur.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if cur[i] < self.r {
                cur[i] += 1;
                for c in cur.iter_mut().skip(i + 1) {
                    *c = -self.r;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Primitive points of the box `0 < ||x||_inf <= r`, in lex order.
pub fn primitive_points(n: usize, r: i64) -> impl Iterator<Item = Vec<i64>> {
    BoxPoints::new(n, r).filter(|x| is_primitive(x))
}

/// The shard of [`primitive_points`] with fixed leading coordinate.
/// Concatenating shards for `lead = -r ..= r` reproduces the full stream.
pub fn primitive_points_shard(n: usize, r: i64, lead: i64) -> impl Iterator<Item = Vec<i64>> {
    assert!(n >= 1 && lead.abs() <= r);
    BoxPoints::new(n - 1, r).filter_map(move |rest| {
        let mut x = Vec::with_capacity(n);
        x.push(lead);
        x.extend_from_slice(&rest);
        if is_primitive(&x) {
            Some(x)
        } else {
            None
        }
    })
}
