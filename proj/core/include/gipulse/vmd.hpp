#ifndef GIPULSE_VMD_HPP
#define GIPULSE_VMD_HPP

#include <cstdint>
#include <vector>

#include "gipulse/time_series.hpp"

namespace gipulse {

enum class VmdInit {
    Uniform,      // centers spread evenly over [0, fs/2)
    Zeros,        // all centers at 0
    SeededRandom, // uniform draws over (0, fs/2), sorted; uses init_seed
};

/// Variational mode decomposition controls. alpha weights the bandwidth
/// penalty; tau is the dual-ascent step (0 disables exact-reconstruction
/// pressure, the noise-robust choice).
struct VmdConfig {
    int K = 3;
    double alpha = 2000.0;
    double tau = 0.0;
    double tol = 1e-7;
    int max_iter = 500;
    VmdInit init = VmdInit::Uniform;
    std::uint64_t init_seed = 0;
};

/// K narrow-band modes in ascending center-frequency order. Each mode has
/// the input's length and sample rate; sum of modes approximates the input
/// when tau > 0.
struct VmdResult {
    std::vector<TimeSeries> modes;
    std::vector<double> center_freqs_hz;
    int iterations = 0;
    bool converged = false;
    double final_increment = 0.0; // last value of sum_k ||du_k||^2/||u_k||^2
};

/// Decompose x into K modes u_k with center frequencies omega_k by the
/// augmented-Lagrangian scheme: iterate, in the nonnegative-frequency
/// domain of the mirror-extended signal,
///   u_k <- (f - sum_{i!=k} u_i + lambda/2) / (1 + 2*alpha*(w - w_k)^2)
///   w_k <- centroid of w over |u_k(w)|^2
///   lambda <- lambda + tau * (f - sum_k u_k)
/// until the relative mode increment drops below tol or max_iter is hit.
VmdResult vmd_decompose(const TimeSeries& x, const VmdConfig& cfg);

struct ImfSelection {
    std::size_t index = 0;
    TimeSeries mode;
    bool out_of_band = false;
};

/// The lowest-center-frequency mode inside [band.lo, band.hi]. When no
/// center frequency falls inside the band, the globally lowest mode is
/// returned with out_of_band set; the caller decides whether that is fatal.
ImfSelection select_imf(const VmdResult& result, const FrequencyBand& band);

} // namespace gipulse

#endif
