#include "fixtures.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "logclone/errors.hpp"
#include "logclone/metrics.hpp"

namespace synth {

FixtureResult check_metric_fixtures(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  const auto doc = nlohmann::json::parse(in);
  const double tol = doc.at("tolerance").get<double>();

  FixtureResult result;
  for (const auto& c : doc.at("cases")) {
    ++result.cases;
    const auto name = c.at("name").get<std::string>();
    const auto metric = c.at("metric").get<std::string>();
    const auto cand = c.at("candidate").get<logclone::TokenSeq>();
    const auto ref = c.at("reference").get<logclone::TokenSeq>();
    const bool want_error = c.value("error", false);
    try {
      if (metric == "bleu") {
        const double got = logclone::bleu(cand, ref, c.at("max_n").get<int>());
        if (want_error) {
          result.failures.push_back(name + ": expected an error");
        } else if (std::fabs(got - c.at("expected").get<double>()) > tol) {
          result.failures.push_back(name + ": got " + std::to_string(got));
        }
        continue;
      }
      const auto got = metric == "rouge_l" ? logclone::rouge_l(cand, ref)
                                           : logclone::rouge_n(cand, ref, c.at("n").get<int>());
      if (want_error) {
        result.failures.push_back(name + ": expected an error");
        continue;
      }
      const auto& e = c.at("expected");
      if (std::fabs(got.precision - e.at("precision").get<double>()) > tol ||
          std::fabs(got.recall - e.at("recall").get<double>()) > tol ||
          std::fabs(got.f1 - e.at("f1").get<double>()) > tol) {
        result.failures.push_back(name + ": got p=" + std::to_string(got.precision) +
                                  " r=" + std::to_string(got.recall) +
                                  " f=" + std::to_string(got.f1));
      }
    } catch (const logclone::InvalidArgument& ex) {
      if (!want_error) result.failures.push_back(name + ": " + ex.what());
    }
  }
  return result;
}

}  // namespace synth
