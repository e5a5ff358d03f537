//! Special functions used by the closed forms: complex log-gamma, Beta,
//! Gauss hypergeometric `2F1` and Jacobi polynomials with complex parameters.

mod gamma;
mod hyp2f1;
mod jacobi;

pub use gamma::{beta, gamma, ln_gamma, pochhammer, rgamma};
pub use hyp2f1::{gauss_2f1, Hyp2F1Args};
pub use jacobi::{
    ascending_form_coefficients, jacobi_poly, jacobi_sum_ascending_form, jacobi_sum_product_form,
    product_form_coefficients, JacobiParams,
};
