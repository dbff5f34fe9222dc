use std::sync::Arc;

use bentforge::boolfun::{fwht, is_bent, is_bent_mod, walsh_at, walsh_transform, BooleanFunction};
use bentforge::carry::{solve_carries, PeriodicBitSeq};
use bentforge::field::{FieldCtx, FieldSpec};
use proptest::prelude::*;

fn field(n: u32) -> Arc<FieldCtx> {
    FieldCtx::from_spec(FieldSpec::default_for(n).unwrap())
}

proptest! {
    #[test]
    fn field_axioms(n in 2u32..=16, x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let k = field(n);
        let mask = (k.order() - 1) as u32;
        let (x, y, z) = (x & mask, y & mask, z & mask);
        prop_assert_eq!(k.mul(x, k.add(y, z)), k.add(k.mul(x, y), k.mul(x, z)));
        prop_assert_eq!(k.mul(k.mul(x, y), z), k.mul(x, k.mul(y, z)));
        prop_assert_eq!(k.mul(x, y), k.mul_reduce(x, y));
        prop_assert_eq!(k.square(k.add(x, y)), k.add(k.square(x), k.square(y)));
        prop_assert_eq!(k.trace(x), k.trace_by_frobenius(x));
        if x != 0 {
            prop_assert_eq!(k.mul(x, k.inv(x).unwrap()), 1);
        }
    }

    #[test]
    fn fwht_applied_twice_scales(values in prop::collection::vec(-50i32..50, 64)) {
        let mut v = values.clone();
        fwht(&mut v);
        fwht(&mut v);
        let scaled: Vec<i32> = values.iter().map(|x| x * 64).collect();
        prop_assert_eq!(v, scaled);
    }

    #[test]
    fn spectrum_matches_definition(n in 1u32..=8, bits in prop::collection::vec(any::<bool>(), 256), b in any::<u32>()) {
        let k = field(n);
        let size = k.order() as usize;
        let f = BooleanFunction::from_bits(k.clone(), &bits[..size]).unwrap();
        let s = walsh_transform(&f);
        let b = b & (size as u32 - 1);
        prop_assert_eq!(s.get(b) as i64, walsh_at(&f, b));
        prop_assert!(s.satisfies_parseval());
        prop_assert_eq!(BooleanFunction::from_hex(k, &f.to_hex()).unwrap(), f);
    }

    #[test]
    fn bent_agrees_with_bent_mod(bits in prop::collection::vec(any::<bool>(), 64)) {
        let f = BooleanFunction::from_bits(field(6), &bits).unwrap();
        prop_assert_eq!(is_bent(&f).unwrap(), is_bent_mod(&f).unwrap());
    }

    #[test]
    fn carries_are_sound(
        n in 2usize..=20,
        raw in prop::collection::vec((any::<u32>(), 1i64..=3, any::<bool>()), 1..=3),
    ) {
        let mask = (1u64 << n) - 1;
        let seqs: Vec<PeriodicBitSeq> = raw.iter().map(|&(v, _, _)| PeriodicBitSeq::from_residue((v as u64 & mask) as i128, n as u32)).collect();
        prop_assume!(!seqs.iter().all(PeriodicBitSeq::is_constant));
        let coeffs: Vec<i64> = raw.iter().map(|&(_, t, neg)| if neg { -t } else { t }).collect();
        let sol = solve_carries(n, &coeffs, &seqs).unwrap();
        prop_assert!(sol.is_valid(&coeffs, &seqs));
        prop_assert!(sol.digits_sound(&coeffs, &seqs));
        prop_assert!(sol.sum_identity(&coeffs, &seqs));
    }
}
