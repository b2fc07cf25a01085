// LAPACK/BLAS symbols for ndarray-linalg are resolved against the system
// OpenBLAS (single shared object providing BLAS, CBLAS and LAPACK).
fn main() {
    println!("cargo:rustc-link-lib=dylib=openblas");
}
