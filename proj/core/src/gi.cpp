#include "gipulse/gi.hpp"

#include <cmath>
#include <random>

#include "gipulse/errors.hpp"
#include "gipulse/rng.hpp"

namespace gipulse {

BucketRecord bucket_measure(const SpeckleSequence& speckles, const FrameSequence& frames,
                            double detector_noise_sigma, std::uint64_t seed) {
    if (speckles.width != frames.width || speckles.height != frames.height)
        throw InvalidInput("bucket_measure: speckle/frame shape mismatch");
    const std::size_t n = frames.frame_count();
    if (n == 0) throw InvalidInput("bucket_measure: no frames");
    if (speckles.pattern_count() != n)
        throw InvalidInput("bucket_measure: need exactly one pattern per frame");
    if (detector_noise_sigma < 0.0)
        throw InvalidInput("bucket_measure: detector_noise_sigma must be >= 0");
    if (!(frames.fs > 0.0)) throw InvalidInput("bucket_measure: frames.fs must be > 0");

    std::mt19937_64 eng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> bucket(n), reference(n);
    const std::size_t px = static_cast<std::size_t>(frames.width) * frames.height;
    for (std::size_t t = 0; t < n; ++t) {
        const double* pat = speckles.data.data() + t * px;
        const double* frm = frames.data.data() + t * px;
        double dot = 0.0, total = 0.0;
        for (std::size_t i = 0; i < px; ++i) {
            dot += pat[i] * frm[i];
            total += pat[i];
        }
        const double eps = detector_noise_sigma > 0.0 ? detector_noise_sigma * gauss(eng) : 0.0;
        bucket[t] = dot * (1.0 + eps);
        reference[t] = total;
    }
    return {TimeSeries{std::move(bucket), frames.fs}, TimeSeries{std::move(reference), frames.fs}};
}

Image dgi_reconstruct(const BucketRecord& rec, const SpeckleSequence& speckles,
                      DgiFormula formula) {
    const std::size_t n = speckles.pattern_count();
    if (n < 2) throw InvalidInput("dgi_reconstruct: need at least 2 patterns");
    if (rec.bucket.size() != n || rec.reference.size() != n)
        throw InvalidInput("dgi_reconstruct: record length does not match pattern count");

    const std::size_t px = static_cast<std::size_t>(speckles.width) * speckles.height;
    std::vector<double> mean_ib(px, 0.0);  // <I*B>
    std::vector<double> mean_ibp(px, 0.0); // <I*B'>
    double mean_b = 0.0, mean_bp = 0.0;

    for (std::size_t t = 0; t < n; ++t) {
        const double* pat = speckles.data.data() + t * px;
        const double b = rec.bucket.samples[t];
        const double bp = rec.reference.samples[t];
        mean_b += b;
        mean_bp += bp;
        for (std::size_t i = 0; i < px; ++i) {
            mean_ib[i] += pat[i] * b;
            mean_ibp[i] += pat[i] * bp;
        }
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    mean_b *= inv_n;
    mean_bp *= inv_n;
    if (!(mean_bp > 0.0)) throw InvalidInput("dgi_reconstruct: reference arm has zero mean");

    Image out;
    out.width = speckles.width;
    out.height = speckles.height;
    out.data.resize(px);
    const double ratio = mean_b / mean_bp;
    for (std::size_t i = 0; i < px; ++i) {
        mean_ib[i] *= inv_n;
        mean_ibp[i] *= inv_n;
        out.data[i] = formula == DgiFormula::Canonical
                          ? mean_ib[i] - ratio * mean_ibp[i]
                          : mean_ib[i] * (1.0 - ratio);
    }
    return out;
}

TimeSeries normalize_bucket(const BucketRecord& rec) {
    const std::size_t n = rec.bucket.size();
    if (n == 0 || rec.reference.size() != n)
        throw InvalidInput("normalize_bucket: bucket/reference length mismatch");
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double ref = rec.reference.samples[t];
        if (!(ref > 0.0))
            throw InvalidInput("normalize_bucket: reference must be positive everywhere");
        out[t] = rec.bucket.samples[t] / ref;
    }
    return {std::move(out), rec.bucket.fs};
}

} // namespace gipulse
