/// Derive the owned/borrowed operator combinations from the `&T op &T` impl.
#[macro_export]
#[doc(hidden)]
macro_rules! forward_owned_binops {
    ($t:ty; $($tr:ident $m:ident),*) => {$(
        impl std::ops::$tr<$t> for $t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { std::ops::$tr::$m(&self, &o) }
        }
        impl std::ops::$tr<&$t> for $t {
            type Output = $t;
            fn $m(self, o: &$t) -> $t { std::ops::$tr::$m(&self, o) }
        }
        impl std::ops::$tr<$t> for &$t {
            type Output = $t;
            fn $m(self, o: $t) -> $t { std::ops::$tr::$m(self, &o) }
        }
    )*};
}
