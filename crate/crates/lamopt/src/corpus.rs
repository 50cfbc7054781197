//! Bundled λ-terms: a self-test corpus stressing Church arithmetic, erasure
//! of divergent subterms, fixed-point combinators, sharing, and free
//! variables, plus the large arithmetic benchmark.

/// The benchmark term `3^3 - (2+2)!` over Church numerals, with factorial
/// defined through Turing's fixed-point combinator. Normal form: Church 3.
pub const BENCHMARK: &str = include_str!("../data/benchmark.lam");

/// Name and source of every corpus entry. Sources use only `.lam` surface
/// syntax; expected normal forms are computed by the reference reducer.
pub const CORPUS: &[(&str, &str)] = &[
    ("identity_applied", "(\\x.x) y"),
    ("church_add_2_3", include_str!("../data/corpus/church_add_2_3.lam")),
    ("church_mul_2_3", include_str!("../data/corpus/church_mul_2_3.lam")),
    ("church_exp_3_3", include_str!("../data/corpus/church_exp_3_3.lam")),
    ("church_pred_3", include_str!("../data/corpus/church_pred_3.lam")),
    ("church_sub_5_2", include_str!("../data/corpus/church_sub_5_2.lam")),
    ("church_fact_3", include_str!("../data/corpus/church_fact_3.lam")),
    ("k_erases_omega", "(\\x.\\y.x) z ((\\x.x x) (\\x.x x))"),
    ("k_head_omega", "(\\x.\\y.y) ((\\x.x x) (\\x.x x)) z"),
    (
        "k_x_f_omega",
        "(\\f.\\x.(\\a.\\b.a) x f) ((\\x.x x) (\\x.x x))",
    ),
    (
        "omega_omega_two",
        "(\\x.x x) ((\\x.x x) (\\f.\\x.f (f x)))",
    ),
    (
        "curry_fix_id",
        "(\\x.\\y.y) ((\\f.(\\x.f (x x)) (\\x.f (x x))) (\\w.w))",
    ),
    (
        "turing_fix_id",
        "(\\x.\\y.y) (((\\a.\\b.b (a a b)) (\\a.\\b.b (a a b))) (\\w.w))",
    ),
    (
        "curry_fix_church2",
        "(\\x.\\f.\\z.f (f z)) ((\\f.(\\x.f (x x)) (\\x.f (x x))) (\\w.w))",
    ),
    (
        "turing_fix_church2",
        "(\\x.\\f.\\z.f (f z)) (((\\a.\\b.b (a a b)) (\\a.\\b.b (a a b))) (\\w.w))",
    ),
    (
        "iszero_zero",
        "(\\n.n (\\u.\\a.\\b.b) (\\a.\\b.a)) (\\f.\\x.x)",
    ),
    (
        "iszero_two",
        "(\\n.n (\\u.\\a.\\b.b) (\\a.\\b.a)) (\\f.\\x.f (f x))",
    ),
    ("pred_zero", include_str!("../data/corpus/pred_zero.lam")),
    ("sub_2_5_floors", include_str!("../data/corpus/sub_2_5.lam")),
    (
        "add_0_0",
        "(\\m.\\n.\\f.\\x.m f (n f x)) (\\f.\\x.x) (\\f.\\x.x)",
    ),
    (
        "mul_1_1",
        "(\\m.\\n.\\f.m (n f)) (\\f.\\x.f x) (\\f.\\x.f x)",
    ),
    ("two_two", "(\\f.\\x.f (f x)) (\\f.\\x.f (f x))"),
    (
        "two_two_two",
        "(\\f.\\x.f (f x)) (\\f.\\x.f (f x)) (\\f.\\x.f (f x))",
    ),
    ("three_of_id", "(\\f.\\x.f (f (f x))) (\\y.y)"),
    (
        "s_k_k",
        "(\\a.\\b.\\c.a c (b c)) (\\a.\\b.a) (\\a.\\b.a)",
    ),
    ("free_var", "y"),
    ("free_applications", "y (\\x.x) z"),
    ("free_repeated", "\\x.y x y"),
    ("free_flows_out", "(\\x.x y) (\\z.z)"),
    ("capture_forcing", "(\\x.\\y.x) y"),
    ("shadowed_binders", "(\\x.\\x.x) a b"),
    ("no_eta", "\\x.y x"),
    ("redex_under_binder", "\\z.(\\x.x) z"),
    ("shared_function", "(\\f.f (f y)) (\\x.x)"),
    ("mini_arithmetic", include_str!("../data/corpus/mini_arithmetic.lam")),
    (
        "nested_erasure",
        "(\\x.\\y.\\z.y) ((\\x.x x) (\\x.x x)) (\\w.w) ((\\x.x x) (\\x.x x))",
    ),
];
