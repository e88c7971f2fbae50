macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(heisenberg_flat);
example!(adapt_frame);
example!(invariants_and_normal_form);
example!(recognize_algebras);
example!(construct_and_classify);
example!(regenerate_table);
example!(tanaka_prolongation);
example!(non_canonical_realization);
example!(cli_pipeline);
