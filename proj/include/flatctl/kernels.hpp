#pragma once

// Interaction-kernel catalog for one-dimensional neural fields. Pointwise
// (Dirac) couplings reduce the field equation to a family of ODEs on a grid,
// the smooth kernels come with closed-form Fourier transforms that are
// cross-checked by quadrature, and fields driven by a one-sided exponential
// kernel satisfy a mixed space-time PDE whose residual certifies a simulated
// field.

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "flatctl/integrate.hpp"
#include "flatctl/sigmoids.hpp"

namespace flatctl {

// ============================================================
// Kernel catalog
// ============================================================

enum class KernelKind {
    DiracOrigin,  // delta at x = 0
    DiracShifted, // delta at x = x0
    DiracSum,     // sum of weighted deltas
    SingleExp,    // e^{-a x} on x >= 0
    MultiExp,     // sum of e^{-a_i x} on x >= 0
    Gaussian,     // e^{-x^2 / sigma^2}
    AbsExp,       // e^{-a |x|}
    DecayingOsc,  // e^{-b |x|} (b sin|x| + cos|x|)
    FlatHat,      // 1 on |x| <= chi / 2
    MexicanHat,   // Gamma1 e^{-gamma1 |x|} - Gamma2 e^{-gamma2 |x|}
    WizardHat,    // (1/4)(1 - |x|) e^{-|x|}
};

struct KernelSpec {
    KernelKind kind = KernelKind::DiracOrigin;
    std::map<std::string, double> params; // scalar parameters by name
    std::vector<double> weights;          // DiracSum weights
    std::vector<double> locations;        // DiracSum locations
    std::vector<double> rates;            // MultiExp decay rates
};

std::string kernelName(KernelKind kind);

KernelSpec diracOriginKernel();
KernelSpec diracShiftedKernel(double x0);
KernelSpec diracSumKernel(std::vector<double> weights, std::vector<double> locations);
KernelSpec singleExpKernel(double a);
KernelSpec multiExpKernel(std::vector<double> rates);
KernelSpec gaussianKernel(double sigma);
KernelSpec absExpKernel(double a);
KernelSpec decayingOscKernel(double b);
KernelSpec flatHatKernel(double chi);
KernelSpec mexicanHatKernel(double amp1, double decay1, double amp2, double decay2);
KernelSpec wizardHatKernel();

void validateKernel(const KernelSpec& k);
bool kernelIsDistribution(KernelKind kind);

// Pointwise kernel value. Dirac kinds have no pointwise value and throw
// UnsupportedError; couple them through diracReduce instead.
double evalKernel(const KernelSpec& k, double x);

// ============================================================
// Fourier transforms
// ============================================================

// Convention: forward transform integral of w(x) e^{-j zeta x} dx with no
// 2 pi prefactor. The Gaussian and Mexican-hat closed forms reproduce the
// catalog expressions verbatim even though quadrature disagrees with them
// (wrong prefactor and a dropped square, respectively); the conformance
// report below carries the gap instead of silently correcting it.
std::complex<double> fourierClosedForm(const KernelSpec& k, double zeta);

// True when the kind has a tabulated closed form (everything except the
// one-sided exponential kinds).
bool fourierClosedFormAvailable(KernelKind kind);

// Quadrature transform: adaptive Simpson of w(x) cos(zeta x) and
// -w(x) sin(zeta x) over [-L, L], folded onto [0, L] (one-sided kernels
// integrate over [0, L] directly), with panel splits at kink points and an
// absolute error target of 1e-8. Dirac kinds evaluate exactly by the sifting
// property, keeping only locations inside the truncation radius. Throws
// NumericalError when refinement stalls.
std::complex<double> fourierNumeric(const KernelSpec& k, double zeta, double truncation);
std::complex<double> fourierNumeric(const KernelSpec& k, double zeta);

// Truncation radius beyond which the kernel tail integrates to below 1e-10.
double defaultTruncation(const KernelSpec& k);

struct FourierSample {
    std::string kernel;
    double zeta = 0.0;
    std::complex<double> closedForm;
    std::complex<double> numeric;
    double absDiff = 0.0;
};

// Closed form versus quadrature for every kernel in the list that has a
// closed form (others are skipped), at each requested frequency. Rows where
// the catalog expression is known to disagree with quadrature are included
// on purpose so the discrepancy stays visible downstream.
std::vector<FourierSample> fourierConformance(const std::vector<KernelSpec>& kernels,
                                              const std::vector<double>& zetas);

// Catalog instance used by the conformance report and its scenario.
std::vector<KernelSpec> defaultFourierCatalog();

// ============================================================
// Field reductions
// ============================================================

// One-dimensional field parameters: time constant, coupling gain, coupling
// interval, firing-rate map, and synapse saturation flag. The reductions
// below cover the non-saturating regime only.
struct FieldParams {
    double tauSy = 1.0;
    double Ir = 0.5;
    double domainLo = 0.0;
    double domainHi = 4.0;
    SigmoidSpec F = heavisideSigmoid(1.0, 0.0);
    bool saturating = false;
};

void validateField(const FieldParams& f);

struct SpatialGrid {
    double lo = 0.0;
    double hi = 1.0;
    int n = 101; // grid points, spacing (hi - lo) / (n - 1)
};

double gridSpacing(const SpatialGrid& g);
std::vector<double> gridPoints(const SpatialGrid& g);

using FieldInput = std::function<double(double t, double r)>;

// Reduces the field equation with a Dirac kernel to one ODE per grid point:
//   dv/dt(t, r) = -(1/tauSy) v(t, r)
//               + (Ir/tauSy) * ind_{[domainLo, domainHi]}(r - x0) * v(t, r - x0)
//               + u(t, r) / tauSy
// with x0 = 0 for the origin kernel. The shift must land on the grid and lie
// inside the coupling interval; v is read as zero outside the grid.
VectorField diracReduce(const FieldParams& f, const KernelSpec& k, const SpatialGrid& g,
                        const FieldInput& u);

// ============================================================
// Exponential-kernel field
// ============================================================

struct FieldSim {
    std::vector<double> times;
    std::vector<double> points;
    std::vector<std::vector<double>> v; // v[i][j] at (times[i], points[j])
    std::vector<std::vector<double>> u; // forcing sampled on the same grid
};

// Convolution of a one-sided exponential e^{-a r} (r >= 0) with samples on a
// uniform grid: left-to-right recurrence with exact homogeneous decay and
// trapezoidal increments, so q' = v - a q holds to second order.
std::vector<double> expConvolve(double a, const std::vector<double>& v, double dr);

// Simulates tauSy dv/dt = -v + Ir (w * v) + u with w the given one-sided
// exponential kernel, classic fixed-step RK4 in time on the grid.
FieldSim simulateExpField(const FieldParams& f, const KernelSpec& k, const SpatialGrid& g,
                          const FieldInput& u, const std::function<double(double)>& v0,
                          double dt, double tEnd);

// Mixed space-time residual satisfied by exact solutions of the exponential
// kernel field:
//   tauSy d2v/dtdr + (a tauSy d/dt + d/dr + a - Ir) v - (d/dr + a) u = 0.
// Central differences on the interior; entry [i][j] covers the node at
// (times[i+1], points[j+1]).
std::vector<std::vector<double>> expKernelPdeResidual(const FieldParams& f,
                                                      const KernelSpec& k,
                                                      const FieldSim& sim);

} // namespace flatctl
