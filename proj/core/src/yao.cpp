#include "palette/yao.hpp"

#include <cmath>
#include <string>

#include "palette/adversaries.hpp"
#include "palette/errors.hpp"

namespace palette::adversary {

namespace {

std::size_t pow3(int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= 3;
  return r;
}

}  // namespace

RevealSequence YaoInstance::sequence() const {
  auto seq = path_order(path_edges(), order);
  seq.construction = "yao";
  seq.parameters = {{"b", static_cast<double>(b)}, {"L", static_cast<double>(levels)}};
  return seq;
}

YaoInstance yao_instance(int b, int levels) {
  if (b < 1 || b > 19) throw ParameterError("yao needs 1 <= b <= 19, got " + std::to_string(b));
  if (levels < 0 || levels > b - 1) {
    throw ParameterError("yao subphase count L must lie in 0..b-1, got " + std::to_string(levels));
  }
  YaoInstance inst;
  inst.b = b;
  inst.a = pow3(b);
  inst.levels = levels;
  const std::size_t a = inst.a;
  const std::size_t m = a - 2;

  std::vector<bool> placed(m + 1, false);
  const auto place = [&](std::size_t i) {
    placed[i] = true;
    inst.order.push_back(i);
  };

  std::size_t done = 0;  // N_{i-1}
  for (int i = 1; i <= levels; ++i) {
    const std::size_t count = a / pow3(i);
    auto& block = inst.subphases.emplace_back();
    auto& gaps = inst.gap_edges.emplace_back();
    for (std::size_t j = 1; j <= count; ++j) {
      block.push_back(2 * done + 2 * j - 1);
      if (j < count) gaps.push_back(2 * done + 2 * j);
    }
    done += count;
    inst.block_links.push_back(2 * done);
  }
  const std::size_t spread = a / pow3(levels + 1);
  for (std::size_t j = 1; j <= spread; ++j) {
    inst.spread.push_back(2 * done + 3 * j - 2);
    if (j < spread) {
      inst.spread_gaps.push_back(2 * done + 3 * j - 1);
      inst.spread_gaps.push_back(2 * done + 3 * j);
    }
  }

  for (const auto& block : inst.subphases) {
    for (std::size_t i : block) place(i);
  }
  for (std::size_t i : inst.spread) place(i);
  for (std::size_t i = 1; i <= m; ++i) {
    if (!placed[i]) place(i);
  }
  return inst;
}

YaoInstance yao_sample(int b, RngStream& rng) {
  if (b < 1) throw ParameterError("yao needs b >= 1");
  int levels = 0;
  while (levels < b - 1 && rng.coin()) ++levels;
  return yao_instance(b, levels);
}

double yao_level_probability(int b, int levels) {
  if (levels < 0 || levels > b - 1) return 0.0;
  if (levels == b - 1) return std::ldexp(1.0, -(b - 1));
  return std::ldexp(1.0, -(levels + 1));
}

double yao_colored_bound(int b) {
  const double a = static_cast<double>(pow3(b));
  return 0.8 * a + 1.0 / (5.0 * std::pow(a, std::log(6.0) / std::log(3.0) - 1.0)) + 1.0;
}

}  // namespace palette::adversary
