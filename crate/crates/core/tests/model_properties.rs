use proptest::prelude::*;

use strassen_core::exact::ExactRatio;
use strassen_core::flopmodel::{strassen_flops, strassen_flops_recurrence};
use strassen_core::params::{
    interval_of, is_best_case_order, optimal_params, strassen_params, worst_case_bound,
};

proptest! {
    #[test]
    fn closed_form_equals_recurrence(m in 1u64..2000, k in 0u32..40) {
        prop_assert_eq!(strassen_flops(m, k).unwrap(), strassen_flops_recurrence(m, k).unwrap());
    }

    #[test]
    fn strassen_rule_bounds(n in 16u64..(1u64 << 50)) {
        let c = strassen_params(n).unwrap();
        prop_assert!((17..=32).contains(&c.m));
        prop_assert!(c.n_tilde > n);
        prop_assert!(c.padding_ratio() <= worst_case_bound());
        prop_assert_eq!(c.padding_ratio() == worst_case_bound(), n.is_power_of_two());
        prop_assert_eq!(c.d == 1, is_best_case_order(n));
        let (alpha, j) = interval_of(n).unwrap();
        prop_assert_eq!((c.k, c.m), (alpha - 4, 16 + j as u64));
    }

    #[test]
    fn optimal_never_worse_than_strassen_rule(n in 16u64..(1u64 << 30)) {
        prop_assert!(optimal_params(n).unwrap().predicted_flops
            <= strassen_params(n).unwrap().predicted_flops);
    }

    #[test]
    fn ratio_parse_display_round_trip(num in any::<i64>(), den in 1i64..i64::MAX) {
        let r = ExactRatio::new(num, den).unwrap();
        let back: ExactRatio = r.to_string().parse().unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(r.reduced(), r);
    }

    #[test]
    fn decimal_rendering_is_within_half_ulp(num in 1i64..i64::MAX, den in 1i64..1_000_000_000) {
        let r = ExactRatio::new(num, den).unwrap();
        let s = r.to_decimal(17);
        let (mantissa, exp) = s.split_once('e').unwrap();
        let exp: i32 = exp.parse().unwrap();
        let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
        prop_assert_eq!(digits.len(), 17);
        // |rendered - r| <= 10^(exp - 16) / 2
        let rendered: ExactRatio = if exp >= 16 {
            format!("{digits}{}", "0".repeat((exp - 16) as usize)).parse().unwrap()
        } else {
            format!("{digits}/1{}", "0".repeat((16 - exp) as usize)).parse().unwrap()
        };
        let half_unit: ExactRatio = if exp >= 17 {
            format!("5{}", "0".repeat((exp - 17) as usize)).parse().unwrap()
        } else {
            format!("1/2{}", "0".repeat((16 - exp) as usize)).parse().unwrap()
        };
        prop_assert!(rendered.abs_diff(&r) <= half_unit);
    }
}
