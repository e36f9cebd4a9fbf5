//! Normal-form rewriting in a Clifford algebra, symbolic in the gram entries.
//!
//! Blades are bit sets over `e_1..e_n` (bit `i` is `e_{i+1}`) standing for
//! the increasing product of their generators. Multiplying a blade by one
//! generator only ever produces coefficients of the form `±1`, `±G_aa` or
//! `±2·G_ab`, so the rewriting is carried out once with those symbols and
//! then evaluated over whatever coefficient ring the gram matrix lives in.

/// Coefficient `factor · G[entry]`, or just `factor` when `entry` is `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GramCoeff {
    pub factor: i8,
    pub entry: Option<(u8, u8)>,
}

impl GramCoeff {
    fn unit() -> Self {
        GramCoeff {
            factor: 1,
            entry: None,
        }
    }

    fn negated(self) -> Self {
        GramCoeff {
            factor: -self.factor,
            ..self
        }
    }
}

pub type GramTerm = (u32, GramCoeff);

fn highest(bits: u32) -> usize {
    31 - bits.leading_zeros() as usize
}

fn lowest(bits: u32) -> usize {
    bits.trailing_zeros() as usize
}

/// `e_I · e_j` in normal form.
pub fn blade_times_generator(blade: u32, j: usize) -> Vec<GramTerm> {
    let bit = 1u32 << j;
    if blade == 0 {
        return vec![(bit, GramCoeff::unit())];
    }
    let top = highest(blade);
    if top < j {
        return vec![(blade | bit, GramCoeff::unit())];
    }
    let rest = blade & !(1 << top);
    if top == j {
        // e_j e_j = G_jj
        return vec![(
            rest,
            GramCoeff {
                factor: 1,
                entry: Some((j as u8, j as u8)),
            },
        )];
    }
    // e_top e_j = -e_j e_top + 2 G_{top j}
    let mut out: Vec<GramTerm> = blade_times_generator(rest, j)
        .into_iter()
        .map(|(b, c)| (b | (1 << top), c.negated()))
        .collect();
    out.push((
        rest,
        GramCoeff {
            factor: 2,
            entry: Some((top as u8, j as u8)),
        },
    ));
    out
}

/// `e_i · e_I` in normal form.
pub fn generator_times_blade(i: usize, blade: u32) -> Vec<GramTerm> {
    let bit = 1u32 << i;
    if blade == 0 {
        return vec![(bit, GramCoeff::unit())];
    }
    let low = lowest(blade);
    if i < low {
        return vec![(blade | bit, GramCoeff::unit())];
    }
    let rest = blade & !(1 << low);
    if i == low {
        return vec![(
            rest,
            GramCoeff {
                factor: 1,
                entry: Some((i as u8, i as u8)),
            },
        )];
    }
    // e_i e_low = -e_low e_i + 2 G_{i low}
    let mut out: Vec<GramTerm> = generator_times_blade(i, rest)
        .into_iter()
        .map(|(b, c)| (b | (1 << low), c.negated()))
        .collect();
    out.push((
        rest,
        GramCoeff {
            factor: 2,
            entry: Some((i as u8, low as u8)),
        },
    ));
    out
}

/// Canonical basis order: by number of generators, then by bit value.
pub fn basis_order(n: usize) -> Vec<u32> {
    let mut b: Vec<u32> = (0..(1u32 << n)).collect();
    b.sort_by_key(|&x| (x.count_ones(), x));
    b
}

pub fn parity_basis(n: usize, parity: u32) -> Vec<u32> {
    basis_order(n)
        .into_iter()
        .filter(|b| b.count_ones() % 2 == parity)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommuting_generators() {
        // e2 · e1 with blade bits: e1 = 1, e2 = 2
        let t = blade_times_generator(0b10, 0);
        assert_eq!(t.len(), 2);
        assert_eq!(t[0], (0b11, GramCoeff { factor: -1, entry: None }));
        assert_eq!(
            t[1],
            (0, GramCoeff { factor: 2, entry: Some((1, 0)) })
        );
    }

    #[test]
    fn left_and_right_agree_on_generators() {
        for i in 0..4 {
            for j in 0..4 {
                let a = blade_times_generator(1 << i, j);
                let b = generator_times_blade(i, 1 << j);
                assert_eq!(a.len(), b.len());
            }
        }
    }

    #[test]
    fn order() {
        assert_eq!(basis_order(2), vec![0, 1, 2, 3]);
        assert_eq!(basis_order(3), vec![0, 1, 2, 4, 3, 5, 6, 7]);
        assert_eq!(parity_basis(3, 1), vec![1, 2, 4, 7]);
    }
}
