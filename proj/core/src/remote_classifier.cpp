#include "evoxplain/remote_classifier.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <semaphore>

#include "json.hpp"

#include "evoxplain/error.hpp"
#include "evoxplain/png_io.hpp"

namespace evoxplain {
namespace {

using nlohmann::json;

struct Endpoint {
  std::string host;
  int port = 80;
  std::string base_path;
};

Endpoint parse_url(const std::string& url) {
  constexpr std::string_view scheme = "http://";
  if (url.rfind(scheme, 0) != 0) {
    fail(ErrorKind::Parameter, "model URL must start with http:// (got '" + url + "')");
  }
  std::string rest = url.substr(scheme.size());
  Endpoint ep;
  const auto slash = rest.find('/');
  if (slash != std::string::npos) {
    ep.base_path = rest.substr(slash);
    rest.resize(slash);
  }
  while (!ep.base_path.empty() && ep.base_path.back() == '/') ep.base_path.pop_back();
  const auto colon = rest.rfind(':');
  if (colon != std::string::npos) {
    const std::string port = rest.substr(colon + 1);
    rest.resize(colon);
    try {
      std::size_t used = 0;
      ep.port = std::stoi(port, &used);
      if (used != port.size() || ep.port <= 0 || ep.port > 65535) throw std::out_of_range(port);
    } catch (const std::exception&) {
      fail(ErrorKind::Parameter, "invalid port in model URL '" + url + "'");
    }
  }
  if (rest.empty()) fail(ErrorKind::Parameter, "model URL has no host: '" + url + "'");
  ep.host = rest;
  return ep;
}

std::string error_text(const httplib::Result& res) {
  std::string body = res->body;
  try {
    const json j = json::parse(body);
    if (j.is_object() && j.contains("error") && j["error"].is_string()) {
      body = j["error"].get<std::string>();
    }
  } catch (const json::exception&) {
  }
  return "HTTP " + std::to_string(res->status) + ": " + body;
}

class InFlight {
 public:
  explicit InFlight(std::counting_semaphore<>& slots) : slots_(slots) { slots_.acquire(); }
  ~InFlight() { slots_.release(); }
  InFlight(const InFlight&) = delete;
  InFlight& operator=(const InFlight&) = delete;

 private:
  std::counting_semaphore<>& slots_;
};

}  // namespace

struct RemoteClassifier::Impl {
  explicit Impl(Endpoint ep, std::size_t max_in_flight)
      : endpoint(std::move(ep)), slots(static_cast<std::ptrdiff_t>(max_in_flight)) {}

  Endpoint endpoint;
  std::counting_semaphore<> slots;
  std::mutex mutex;
  std::optional<std::size_t> classes;

  httplib::Client client(std::chrono::milliseconds timeout) const {
    httplib::Client cli(endpoint.host, endpoint.port);
    cli.set_connection_timeout(timeout);
    cli.set_read_timeout(timeout);
    cli.set_write_timeout(timeout);
    cli.set_keep_alive(false);
    return cli;
  }
};

RemoteClassifier::RemoteClassifier(std::string endpoint_url, RemoteOptions options)
    : url_(std::move(endpoint_url)), options_(options) {
  if (options_.max_in_flight == 0) fail(ErrorKind::Parameter, "max_in_flight must be at least 1");
  if (options_.timeout.count() <= 0) fail(ErrorKind::Parameter, "timeout must be positive");
  impl_ = std::make_unique<Impl>(parse_url(url_), options_.max_in_flight);
  impl_->classes = options_.num_classes;
}

RemoteClassifier::~RemoteClassifier() = default;

std::size_t RemoteClassifier::health() const {
  const std::string path = impl_->endpoint.base_path + "/healthz";
  httplib::Result res = [&] {
    InFlight slot(impl_->slots);
    auto cli = impl_->client(options_.timeout);
    return cli.Get(path);
  }();
  if (!res) {
    fail(ErrorKind::Transport, "GET " + url_ + "/healthz failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) fail(ErrorKind::Remote, "GET " + url_ + "/healthz: " + error_text(res));

  std::size_t classes = 0;
  try {
    const json j = json::parse(res->body);
    if (!j.is_object() || !j.contains("classes") || !j["classes"].is_number_unsigned() ||
        j["classes"].get<std::size_t>() == 0) {
      throw std::invalid_argument("expected {\"classes\": K} with K >= 1");
    }
    classes = j["classes"].get<std::size_t>();
  } catch (const std::exception& e) {
    fail(ErrorKind::Protocol, "malformed /healthz response: " + std::string(e.what()));
  }
  std::lock_guard lock(impl_->mutex);
  impl_->classes = classes;
  return classes;
}

std::size_t RemoteClassifier::num_classes() const {
  {
    std::lock_guard lock(impl_->mutex);
    if (impl_->classes) return *impl_->classes;
  }
  return health();
}

ProbDist RemoteClassifier::predict(const RasterImage& image) const {
  const auto png = encode_png(image);
  const std::string path = impl_->endpoint.base_path + "/predict";

  httplib::Result res = [&] {
    InFlight slot(impl_->slots);
    auto cli = impl_->client(options_.timeout);
    return cli.Post(path, reinterpret_cast<const char*>(png.data()), png.size(), "image/png");
  }();
  if (!res) {
    fail(ErrorKind::Transport, "POST " + url_ + "/predict failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) fail(ErrorKind::Remote, "POST " + url_ + "/predict: " + error_text(res));

  std::vector<double> probs;
  try {
    const json j = json::parse(res->body);
    if (!j.is_object() || !j.contains("probabilities") || !j["probabilities"].is_array()) {
      throw std::invalid_argument("missing \"probabilities\" array");
    }
    for (const auto& v : j["probabilities"]) {
      if (!v.is_number()) throw std::invalid_argument("non-numeric probability");
      probs.push_back(v.get<double>());
    }
    if (j.contains("labels")) {
      const auto& labels = j["labels"];
      if (!labels.is_array() || labels.size() != probs.size() ||
          !std::all_of(labels.begin(), labels.end(), [](const json& l) { return l.is_string(); })) {
        throw std::invalid_argument("\"labels\" must be K strings");
      }
    }
  } catch (const std::exception& e) {
    fail(ErrorKind::Protocol, "malformed /predict response: " + std::string(e.what()));
  }

  {
    std::lock_guard lock(impl_->mutex);
    if (impl_->classes && *impl_->classes != probs.size()) {
      fail(ErrorKind::Protocol, "expected " + std::to_string(*impl_->classes) +
                                    " probabilities, got " + std::to_string(probs.size()));
    }
    if (!impl_->classes) impl_->classes = probs.size();
  }
  double sum = 0.0;
  for (double p : probs) {
    if (!std::isfinite(p) || p < 0.0) fail(ErrorKind::Protocol, "negative or non-finite probability");
    sum += p;
  }
  if (probs.empty() || std::abs(sum - 1.0) > kSumTolerance) {
    fail(ErrorKind::Protocol, "probabilities sum to " + std::to_string(sum));
  }
  return ProbDist::with_tolerance(std::move(probs), kSumTolerance);
}

}  // namespace evoxplain
