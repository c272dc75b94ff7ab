#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace aquant {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Numerical tolerances shared by every module. Defaults match the
// documented contract; the CLI can override any of them per run.
struct Tolerances {
    double path = 1e-4;     // A-path residual, relative to max |a|
    double ode = 1e-6;      // local error target for the b-equation
    double hom = 1e-3;      // b(eps, 1) must vanish to this, relative to max |a|
    double r = 1e-4;        // equivalence defects and period comparisons
    double gen = 1e-9;      // period generators treated as zero below this
    double integer = 1e-4;  // distance from an integer counted as integral
    double basic = 1e-3;    // relative size of theta on action directions
    int euclid_cap = 50;    // iteration cap of the period reduction
};

// Grid resolution: n_t subintervals along each path, n_eps across paths.
struct Resolution {
    int n_t = 400;
    int n_eps = 200;
};

// Error hierarchy. Every failure the library reports is one of these.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A point lies outside a chart domain or chart overlap.
class DomainError : public Error {
public:
    using Error::Error;
};

// A field was asked for derivatives beyond the order it carries.
class MissingDerivative : public Error {
public:
    using Error::Error;
};

// Input is structurally unusable (odd Simpson count, degenerate grid, bad arity).
class InvalidInput : public Error {
public:
    using Error::Error;
};

// A requested construction is not available for this object kind.
class Unsupported : public Error {
public:
    using Error::Error;
};

// Numerical integration blew up or lost accuracy.
class DivergenceError : public Error {
public:
    using Error::Error;
};

// A precondition about endpoints, homotopy boundaries or paths fails.
class BoundaryError : public Error {
public:
    using Error::Error;
};

// Singular values of the anchor lie in the unstable band.
class RankInstability : public Error {
public:
    using Error::Error;
};

// The library refuses to build an object whose hypotheses fail.
class Refusal : public Error {
public:
    using Error::Error;
};

// Two independently computed quantities disagree.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace aquant
