#pragma once

#include "fdcv/ar_model.hpp"
#include "fdcv/reml.hpp"

#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <optional>
#include <variant>
#include <vector>

namespace fdcv {

enum class CandidateKind { RemlAr, ParzenLagWeights };

/// One member of the candidate class: an AR order or a Parzen truncation point.
struct CandidateSpec {
    CandidateKind kind = CandidateKind::RemlAr;
    std::size_t parameter = 0;  // AR order p, or truncation h

    static CandidateSpec ar(std::size_t order) { return {CandidateKind::RemlAr, order}; }
    static CandidateSpec parzen(std::size_t h) { return {CandidateKind::ParzenLagWeights, h}; }

    [[nodiscard]] bool is_ar() const noexcept { return kind == CandidateKind::RemlAr; }
    /// "AR(2)" or "PZ(3)".
    [[nodiscard]] std::string label() const;

    friend bool operator==(const CandidateSpec&, const CandidateSpec&) = default;
};

/// Parzen lag window: 1 - 6x^2 + 6|x|^3 on |x| <= 1/2, 2(1-|x|)^3 on (1/2, 1], 0 beyond.
[[nodiscard]] double parzen_kernel(double x) noexcept;

/// (1/2pi) sum_{|r|<=h} w(r/h) c_r cos(r omega) with Parzen weights and 1/n
/// autocovariances of the (already demeaned) data. The 1/2pi factor puts the
/// estimate on the same scale as the AR spectrum, so that 2 pi f(0) is the
/// long-run variance. Throws std::invalid_argument unless 1 <= h <= n-1.
[[nodiscard]] double lag_weights_estimate(std::span<const double> data, std::size_t h,
                                          double omega);

/// A fitted candidate, evaluable at any frequency.
class SpectralEstimator {
public:
    struct ParzenFit {
        std::size_t truncation = 0;
        std::vector<double> weighted_acov;  // w(r/h) c_r, r = 0..h
    };

    SpectralEstimator(CandidateSpec spec, ArModel model);
    SpectralEstimator(CandidateSpec spec, ParzenFit fit);

    [[nodiscard]] const CandidateSpec& spec() const noexcept { return spec_; }
    [[nodiscard]] double evaluate(double omega) const;

    /// Null for Parzen candidates.
    [[nodiscard]] const ArModel* ar_model() const noexcept { return std::get_if<ArModel>(&fit_); }

private:
    CandidateSpec spec_;
    std::variant<ArModel, ParzenFit> fit_;
};

/// Fits a candidate to data as given (no demeaning; REML is mean-invariant
/// anyway, Parzen expects a demeaned or leave-one-out series).
[[nodiscard]] SpectralEstimator fit_candidate(const CandidateSpec& spec,
                                              std::span<const double> data,
                                              const RemlOptions& reml = {});

/// m(n) = floor(4 (n/100)^(2/9)).
[[nodiscard]] std::size_t max_truncation(std::size_t n);

enum class Restriction { All, ArOnly, ParzenOnly };

[[nodiscard]] std::string_view to_string(Restriction r);
/// Accepts "all", "ar-only", "parzen-only". Throws ConfigError otherwise.
[[nodiscard]] Restriction parse_restriction(std::string_view text);

/// AR orders 0..5 followed by Parzen truncations 1..m(n). Order matters: ties in
/// the cross-validation score go to the earlier entry.
struct CandidateClass {
    std::vector<CandidateSpec> candidates;
    std::size_t max_truncation = 0;

    /// AR(0..max_ar_order) then Parzen 1..m(n); parzen_max replaces m(n) when given.
    static CandidateClass for_length(std::size_t n, std::size_t max_ar_order = 5,
                                     std::optional<std::size_t> parzen_max = std::nullopt);
    [[nodiscard]] CandidateClass restricted(Restriction r) const;
    [[nodiscard]] bool allows(const CandidateSpec& spec, Restriction r) const;
};

}  // namespace fdcv
