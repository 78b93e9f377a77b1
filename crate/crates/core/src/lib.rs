//! Gröbner bases over GF(2) for the ideals `I_n = (g_{n-2}, g_{n-1}, g_n)` in
//! `Z2[w2, w3]`, with the Stiefel-Whitney heights and Z2-cup-length of the
//! oriented Grassmannians `G(n,3)` computed both from closed forms and by
//! brute force.

pub mod cli;
pub mod grassmann;
pub mod groebner;
pub mod gseq;
pub mod poly;
