#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "fuzzygait/learning.hpp"
#include "synthetic.hpp"

namespace fg = fuzzygait;

namespace {

std::vector<fg::FeatureVector> normalized_blobs(std::size_t per_class, std::uint64_t seed = 7) {
  const auto rows = synth::two_blob_rows(per_class, 0.3, 0.7, seed);
  std::vector<fg::FeatureVector> out;
  fg::NormalizationParams identity;
  identity.mins.fill(0.0);
  identity.maxs.fill(1.0);
  for (const auto& row : rows) out.push_back(fg::normalize_row(row, identity));
  return out;
}

fg::NormalizationParams identity_params() {
  fg::NormalizationParams p;
  p.mins.fill(0.0);
  p.maxs.fill(1.0);
  return p;
}

}  // namespace

TEST_CASE("single-class training yields consequents of that class", "[learning]") {
  auto samples = normalized_blobs(6);
  samples.erase(samples.begin(), samples.begin() + 6);  // keep only patients
  fg::BatchConfig cfg;
  cfg.rule_count = 3;
  std::ostringstream warn;
  const auto rb = fg::batch_train(samples, cfg, identity_params(), &warn);
  for (const auto& rule : rb.rules) CHECK(rule.consequent == Catch::Approx(1.0).margin(1e-12));
  CHECK(warn.str().find("single-class") != std::string::npos);
}

TEST_CASE("consequents stay inside [-1, 1]", "[learning]") {
  const auto samples = normalized_blobs(12);
  fg::BatchConfig cfg;
  cfg.rule_count = 5;
  const auto rb = fg::batch_train(samples, cfg, identity_params());
  REQUIRE(rb.rules.size() == 5);
  for (const auto& rule : rb.rules) {
    CHECK(rule.consequent >= -1.0);
    CHECK(rule.consequent <= 1.0);
    CHECK_FALSE(rule.sigma_override.has_value());
  }
  CHECK(rb.sigma_lower == 0.01);
  CHECK(rb.sigma_upper == 0.1);
}

TEST_CASE("one rule per sample pins rules to the samples", "[learning]") {
  // Four well-separated samples, R = N and a tight tolerance: each center
  // approaches a sample and each consequent its label.
  std::vector<fg::FeatureVector> samples(4);
  const double locations[4] = {0.05, 0.35, 0.65, 0.95};
  const int labels[4] = {-1, -1, +1, +1};
  for (std::size_t k = 0; k < 4; ++k) {
    samples[k].subject_id = "S" + std::to_string(k);
    samples[k].label = labels[k];
    samples[k].x.fill(locations[k]);
  }
  fg::BatchConfig cfg;
  cfg.rule_count = 4;
  cfg.fcm.tol = 1e-12;
  cfg.fcm.max_iter = 2000;
  cfg.fcm.seed = 11;
  const auto rb = fg::batch_train(samples, cfg, identity_params());

  for (std::size_t k = 0; k < 4; ++k) {
    // Find the rule owning this sample.
    double best = 1e9;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      const double d = std::abs(rb.rules[i].centers[0] - locations[k]);
      if (d < best) {
        best = d;
        best_i = i;
      }
    }
    CHECK(best < 1e-3);
    CHECK(rb.rules[best_i].consequent == Catch::Approx(labels[k]).margin(1e-3));
  }
}

TEST_CASE("training is deterministic for a fixed seed", "[learning]") {
  const auto samples = normalized_blobs(10);
  fg::BatchConfig cfg;
  cfg.rule_count = 4;
  cfg.fcm.seed = 42;
  const auto a = fg::batch_train(samples, cfg, identity_params());
  const auto b = fg::batch_train(samples, cfg, identity_params());
  REQUIRE(a.rules.size() == b.rules.size());
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    CHECK(a.rules[i].centers == b.rules[i].centers);
    CHECK(a.rules[i].consequent == b.rules[i].consequent);
  }
}

TEST_CASE("rule count above the sample count is a config error", "[learning]") {
  const auto samples = normalized_blobs(2);
  fg::BatchConfig cfg;
  cfg.rule_count = 5;
  CHECK_THROWS_AS(fg::batch_train(samples, cfg, identity_params()), fg::ConfigError);
  cfg.rule_count = 2;
  cfg.sigma1 = 0.2;
  cfg.sigma2 = 0.1;  // inverted widths
  CHECK_THROWS_AS(fg::batch_train(samples, cfg, identity_params()), fg::ConfigError);
}

TEST_CASE("a correctly classified sample changes nothing", "[learning]") {
  const auto samples = normalized_blobs(8);
  fg::BatchConfig cfg;
  cfg.rule_count = 2;
  auto rb = fg::batch_train(samples, cfg, identity_params());
  const std::size_t rules_before = rb.rules.size();

  fg::OnlineConfig online;
  std::size_t changed = 0;
  for (const auto& s : samples) {
    const auto outcome = fg::online_update(rb, s, online);
    if (outcome.kind != fg::UpdateKind::NoChangeCorrect) ++changed;
  }
  // The blobs are separable with 2 rules; the whole stream is already
  // classified and leaves the base untouched.
  CHECK(changed == 0);
  CHECK(rb.rules.size() == rules_before);
}

TEST_CASE("a misclassified uncovered sample spawns a rule that captures it", "[learning]") {
  const auto samples = normalized_blobs(8);
  fg::BatchConfig cfg;
  cfg.rule_count = 2;
  auto rb = fg::batch_train(samples, cfg, identity_params());
  const auto before = rb.rules;

  // A patient in the far corner: the healthy rule is the nearest one, so
  // the point is misclassified, and every firing strength is tiny.
  fg::FeatureVector x_new;
  x_new.subject_id = "far";
  x_new.label = +1;
  x_new.x.fill(0.0);
  REQUIRE(fg::classify(x_new.x, rb) == -1);

  fg::OnlineConfig online;
  const auto outcome = fg::online_update(rb, x_new, online);
  REQUIRE(outcome.kind == fg::UpdateKind::RuleAdded);
  REQUIRE(outcome.coverage.has_value());
  CHECK(*outcome.coverage < online.theta_c);
  REQUIRE(outcome.rule_index.has_value());
  CHECK(*outcome.rule_index == before.size());

  // Existing rules are untouched (append-only)...
  REQUIRE(rb.rules.size() == before.size() + 1);
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(rb.rules[i].centers == before[i].centers);
    CHECK(rb.rules[i].consequent == before[i].consequent);
  }
  // ...the new rule copies the sample with epsilon-scaled widths...
  const auto& added = rb.rules.back();
  CHECK(added.centers == x_new.x);
  CHECK(added.consequent == 1.0);
  REQUIRE(added.sigma_override.has_value());
  CHECK(added.sigma_override->lower == Catch::Approx(online.epsilon * rb.sigma_lower));
  CHECK(added.sigma_override->upper == Catch::Approx(online.epsilon * rb.sigma_upper));
  // ...and the sample is now classified correctly: the new rule fires at 1.
  const auto trace = fg::infer(x_new.x, rb);
  CHECK(trace.firings.back().lower == 1.0);
  CHECK(trace.firings.back().upper == 1.0);
  CHECK(fg::decision_sign(trace.decision) == +1);
}

TEST_CASE("a misclassified but covered sample adds nothing", "[learning]") {
  // Two opposing rules; probe near the wrong-class center is misclassified
  // yet well covered.
  fg::RuleBase rb;
  rb.sigma_lower = 0.05;
  rb.sigma_upper = 0.3;
  rb.normalization.mins.fill(0.0);
  rb.normalization.maxs.fill(1.0);
  fg::FuzzyRule healthy;
  healthy.centers.fill(0.3);
  healthy.consequent = -1.0;
  fg::FuzzyRule patient;
  patient.centers.fill(0.7);
  patient.consequent = 1.0;
  rb.rules = {healthy, patient};

  fg::FeatureVector x_new;
  x_new.label = +1;  // claims patient while sitting on the healthy center
  x_new.x.fill(0.3);
  fg::OnlineConfig online;
  const auto outcome = fg::online_update(rb, x_new, online);
  CHECK(outcome.kind == fg::UpdateKind::NoChangeCovered);
  REQUIRE(outcome.coverage.has_value());
  CHECK(*outcome.coverage >= online.theta_c);
  CHECK(rb.rules.size() == 2);
}

TEST_CASE("streaming a shifted cohort grows the base and lifts its accuracy", "[learning]") {
  const auto train = normalized_blobs(10);
  fg::BatchConfig cfg;
  cfg.rule_count = 2;
  auto rb = fg::batch_train(train, cfg, identity_params());
  const std::size_t rules_before = rb.rules.size();

  // A new population in regions the trained rules never saw: patients near
  // the low corner, healthy subjects near the high corner.
  fg::Rng rng(61);
  std::vector<fg::FeatureVector> stream;
  for (int k = 0; k < 6; ++k) {
    fg::FeatureVector s;
    s.label = k % 2 == 0 ? +1 : -1;
    const double base = k % 2 == 0 ? 0.05 : 0.95;
    for (auto& v : s.x) v = std::clamp(base + rng.uniform(-0.04, 0.04), 0.0, 1.0);
    stream.push_back(std::move(s));
  }

  auto accuracy_on_stream = [&] {
    int correct = 0;
    for (const auto& s : stream)
      if (fg::classify(s.x, rb) == s.label) ++correct;
    return static_cast<double>(correct) / static_cast<double>(stream.size());
  };

  const double before = accuracy_on_stream();
  fg::OnlineConfig online;
  std::size_t added = 0;
  for (const auto& s : stream)
    if (fg::online_update(rb, s, online).kind == fg::UpdateKind::RuleAdded) ++added;
  const double after = accuracy_on_stream();

  CHECK(rb.rules.size() > rules_before);
  CHECK(added >= 2);  // at least one rule per unseen region
  CHECK(after > before);
  CHECK(after == 1.0);  // every streamed sample sits near an added rule
}

TEST_CASE("the coverage sum respects the chosen firing bound", "[learning]") {
  CHECK(fg::phi_mode_from_string("mean") == fg::PhiMode::Mean);
  CHECK(fg::phi_mode_from_string("lower") == fg::PhiMode::Lower);
  CHECK(fg::phi_mode_from_string("upper") == fg::PhiMode::Upper);
  CHECK_THROWS_AS(fg::phi_mode_from_string("median"), fg::ConfigError);

  // Same misclassified sample, three coverage definitions: the sums are
  // ordered lower <= mean <= upper.
  const auto samples = normalized_blobs(8);
  fg::BatchConfig cfg;
  cfg.rule_count = 2;
  double coverage[3] = {0, 0, 0};
  const fg::PhiMode modes[3] = {fg::PhiMode::Lower, fg::PhiMode::Mean, fg::PhiMode::Upper};
  for (int m = 0; m < 3; ++m) {
    auto rb = fg::batch_train(samples, cfg, identity_params());
    fg::FeatureVector x_new;
    x_new.label = +1;
    x_new.x.fill(0.0);
    fg::OnlineConfig online;
    online.phi = modes[m];
    const auto outcome = fg::online_update(rb, x_new, online);
    REQUIRE(outcome.coverage.has_value());
    coverage[m] = *outcome.coverage;
  }
  CHECK(coverage[0] <= coverage[1]);
  CHECK(coverage[1] <= coverage[2]);
}

TEST_CASE("online updates reject unnormalized inputs", "[learning]") {
  const auto samples = normalized_blobs(4);
  fg::BatchConfig cfg;
  cfg.rule_count = 2;
  auto rb = fg::batch_train(samples, cfg, identity_params());
  fg::FeatureVector bad;
  bad.label = +1;
  bad.x.fill(0.5);
  bad.x[3] = 1.7;
  CHECK_THROWS_AS(fg::online_update(rb, bad, fg::OnlineConfig{}), fg::ContractError);
}

TEST_CASE("train_model fits and embeds the normalization", "[learning]") {
  const auto rows = synth::two_blob_rows(10, 2.0, 14.0);  // raw scale, far from [0,1]
  fg::BatchConfig cfg;
  cfg.rule_count = 2;
  const auto rb = fg::train_model(rows, cfg);
  for (std::size_t j = 0; j < fg::kNumFeatures; ++j)
    CHECK(rb.normalization.maxs[j] > rb.normalization.mins[j]);
  // Rule centers live in the normalized cube.
  for (const auto& rule : rb.rules)
    for (double c : rule.centers) {
      CHECK(c >= -1e-9);
      CHECK(c <= 1.0 + 1e-9);
    }
}
