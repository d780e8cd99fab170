#pragma once

#include <chrono>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>

#include "evoxplain/classifier.hpp"

namespace evoxplain {

struct RemoteOptions {
  std::chrono::milliseconds timeout{30'000};
  std::size_t max_in_flight = 4;
  /// Expected class count. When unset it is fetched from /healthz on first use.
  std::optional<std::size_t> num_classes;
};

/// Classifier behind the JSON/HTTP wire protocol:
///   POST {url}/predict   (image/png body) -> {"probabilities": [...], "labels": [...]?}
///   GET  {url}/healthz                    -> {"classes": K}
/// Non-200 answers carry {"error": "..."}. Distributions that are negative,
/// non-finite, the wrong length or whose sum is off by more than 1e-6 are
/// rejected, never renormalised.
class RemoteClassifier final : public Classifier {
 public:
  static constexpr double kSumTolerance = 1e-6;

  /// Throws Error(Parameter) on a malformed URL or max_in_flight == 0.
  explicit RemoteClassifier(std::string endpoint_url, RemoteOptions options = {});
  ~RemoteClassifier() override;

  RemoteClassifier(const RemoteClassifier&) = delete;
  RemoteClassifier& operator=(const RemoteClassifier&) = delete;

  ProbDist predict(const RasterImage& image) const override;
  std::size_t num_classes() const override;

  /// GET /healthz and return the advertised class count.
  std::size_t health() const;

  const std::string& endpoint() const noexcept { return url_; }

 private:
  struct Impl;

  std::string url_;
  RemoteOptions options_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace evoxplain
