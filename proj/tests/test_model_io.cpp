#include <catch2/catch_amalgamated.hpp>

#include "fuzzygait/model_io.hpp"
#include "synthetic.hpp"

namespace fg = fuzzygait;

namespace {

fg::RuleBase sample_model() {
  fg::RuleBase rb;
  rb.sigma_lower = 0.01;
  rb.sigma_upper = 0.1;
  for (std::size_t j = 0; j < fg::kNumFeatures; ++j) {
    rb.normalization.mins[j] = 0.1 * static_cast<double>(j);
    rb.normalization.maxs[j] = 0.1 * static_cast<double>(j) + 1.25;
  }
  fg::FuzzyRule a;
  a.centers.fill(0.25);
  a.consequent = 0.875;
  rb.rules.push_back(a);
  fg::FuzzyRule b;
  b.centers.fill(0.75);
  b.consequent = -1.0;
  b.sigma_override = fg::SigmaPair{0.01, 0.1};  // online-added rule
  rb.rules.push_back(b);
  return rb;
}

}  // namespace

TEST_CASE("a saved model loads back identically", "[model_io]") {
  synth::TempDir dir("model");
  const auto rb = sample_model();
  fg::save_rule_base(rb, dir.file("model.json"));
  const auto again = fg::load_rule_base(dir.file("model.json"));
  CHECK(again.sigma_lower == rb.sigma_lower);
  CHECK(again.sigma_upper == rb.sigma_upper);
  CHECK(again.normalization.mins == rb.normalization.mins);
  CHECK(again.normalization.maxs == rb.normalization.maxs);
  REQUIRE(again.rules.size() == rb.rules.size());
  for (std::size_t i = 0; i < rb.rules.size(); ++i) {
    CHECK(again.rules[i].centers == rb.rules[i].centers);
    CHECK(again.rules[i].consequent == rb.rules[i].consequent);
    CHECK(again.rules[i].sigma_override.has_value() == rb.rules[i].sigma_override.has_value());
    if (rb.rules[i].sigma_override) {
      CHECK(again.rules[i].sigma_override->lower == rb.rules[i].sigma_override->lower);
      CHECK(again.rules[i].sigma_override->upper == rb.rules[i].sigma_override->upper);
    }
  }
}

TEST_CASE("a model without a version field is rejected", "[model_io]") {
  auto j = fg::rule_base_to_json(sample_model());
  j.erase("version");
  CHECK_THROWS_AS(fg::rule_base_from_json(j), fg::ModelError);
  j["version"] = 999;
  CHECK_THROWS_AS(fg::rule_base_from_json(j), fg::ModelError);
}

TEST_CASE("malformed model documents are model errors", "[model_io]") {
  synth::TempDir dir("model");
  synth::write_text(dir.file("broken.json"), "{ not json");
  CHECK_THROWS_AS(fg::load_rule_base(dir.file("broken.json")), fg::ModelError);
  CHECK_THROWS_AS(fg::load_rule_base(dir.file("missing.json")), fg::ModelError);

  auto j = fg::rule_base_to_json(sample_model());
  j["rules"][0]["centers"] = std::vector<double>{0.1, 0.2};  // wrong arity
  CHECK_THROWS_AS(fg::rule_base_from_json(j), fg::ModelError);

  j = fg::rule_base_to_json(sample_model());
  j["rules"][0]["consequent"] = 3.0;  // outside [-1, 1]
  CHECK_THROWS_AS(fg::rule_base_from_json(j), fg::ModelError);

  j = fg::rule_base_to_json(sample_model());
  j.erase("normalization");
  CHECK_THROWS_AS(fg::rule_base_from_json(j), fg::ModelError);
}
