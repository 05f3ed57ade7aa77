#pragma once

namespace affinelab {

/// Every tolerance used by the library in one record. Defaults are tuned for
/// double precision and Christoffel constants of order one.
struct Tolerances {
    double rank = 1e-9;       // eigenvalue threshold for rank, scaled by max(1, |rho|)
    double inv = 1e-12;       // |det T| must exceed this for a map to be invertible
    double comm = 1e-10;      // |[A1,A2]| <= comm * (1 + |A|^2)
    double cluster = 1e-11;   // normalised discriminant threshold for repeated roots
    double res = 1e-9;        // quasi-Einstein residual, scaled by (1 + |Gamma|)
    double param = 1e-7;      // canonical parameter comparison
    double witness = 1e-8;    // pullback verification of a witness map
    double invariant = 1e-7;  // relative comparison of psi, Psi, alpha

    /// Multiply every field by `factor`.
    Tolerances scaled(double factor) const;

    /// Apply AFFINELAB_TOL_<NAME> environment overrides (RANK, INV, COMM,
    /// CLUSTER, RES, PARAM, WITNESS, INVARIANT).
    Tolerances with_env_overrides() const;
};

}  // namespace affinelab
