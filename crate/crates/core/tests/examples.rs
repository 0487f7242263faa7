// Every runnable example also runs as a test.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example();
        }
    };
}

example!(classify);
example!(permutation_check);
example!(commutative_width);
example!(unary_bounded);
example!(hitting_set_reduction);
example!(requests);
example!(oracle_crosscheck);
example!(cli_tour);
