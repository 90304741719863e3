#include "scf/config.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "scf/rng.hpp"

namespace scf {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json require(const ordered_json& j, const char* key) {
  if (!j.contains(key)) {
    fail(ErrorCode::ConfigError, std::string("missing config field: ") + key);
  }
  return j.at(key);
}

}  // namespace

RunConfig RunConfig::from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }

  RunConfig c;
  try {
    c.orders = require(require(j, "group"), "orders").get<std::vector<int>>();

    ordered_json a = require(j, "a");
    c.set.kind = a.value("kind", std::string("interval"));
    c.set.start = a.value("start", 0u);
    c.set.length = a.value("length", 0u);
    c.set.size = a.value("size", 0u);
    if (a.contains("indices")) {
      c.set.indices = a.at("indices").get<std::vector<std::uint32_t>>();
    }
    c.set.cell_bits = a.value("cell_bits", 0);
    c.set.full_cells = a.value("full", 0);
    c.set.half_cells = a.value("half", 0);

    if (j.contains("weight")) {
      ordered_json w = j.at("weight");
      c.weight.kind = w.value("kind", std::string("constant"));
      c.weight.value = w.value("value", 1.0);
      if (w.contains("values")) {
        c.weight.values = w.at("values").get<std::vector<double>>();
      }
      c.weight.low = w.value("low", 0.5);
      c.weight.high = w.value("high", 1.0);
    }

    ordered_json p = require(j, "pair");
    c.pair.kind = p.value("kind", std::string("gapped"));
    if (p.contains("blocks")) {
      for (const auto& blk : p.at("blocks")) {
        c.pair.blocks.push_back(
            {blk.at("start").get<std::uint32_t>(), blk.at("width").get<std::uint32_t>()});
      }
    }
    c.pair.mirror = p.value("mirror", true);
    if (p.contains("R")) c.pair.R = p.at("R").get<std::vector<std::uint32_t>>();
    if (p.contains("S")) c.pair.S = p.at("S").get<std::vector<std::uint32_t>>();
    if (p.contains("admissible")) {
      ordered_json adm = p.at("admissible");
      c.pair.admissible.kind = adm.value("kind", std::string("boxes"));
      if (adm.contains("caps")) {
        c.pair.admissible.caps = adm.at("caps").get<std::vector<int>>();
      }
      c.pair.admissible.max_bits = adm.value("max_bits", 3);
    }

    if (j.contains("basis")) {
      ordered_json b = j.at("basis");
      c.basis.kind = b.value("kind", std::string("symmetric-interval"));
      c.basis.member_cap = b.value("member_cap", std::size_t{4096});
      if (b.contains("members")) {
        c.basis.members =
            b.at("members").get<std::vector<std::vector<std::uint32_t>>>();
      }
    }

    ordered_json s = require(j, "schedules");
    c.schedules.epsilon = require(s, "epsilon").get<double>();
    c.schedules.n_max = s.value("n_max", 12);
    c.schedules.g_tol = s.value("g_tol", 0.15);
    if (s.contains("t")) c.schedules.t = s.at("t").get<std::vector<double>>();
    if (s.contains("rho")) c.schedules.rho = s.at("rho").get<std::vector<double>>();

    if (j.contains("partition_style")) {
      c.partition_style = j.at("partition_style").get<std::string>();
    }
    if (j.contains("window_style")) {
      c.window_style = j.at("window_style").get<std::string>();
    }
    if (j.contains("checks")) {
      c.check_sufficiency = j.at("checks").value("sufficiency", true);
      c.check_coordination = j.at("checks").value("coordination", true);
    }
    c.seed = j.value("seed", std::uint64_t{1});
    c.svg = j.value("svg", true);
    c.output_dir = j.value("output_dir", std::string());
    if (j.contains("eps_list")) {
      c.eps_list = j.at("eps_list").get<std::vector<double>>();
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::ConfigError, std::string("malformed config: ") + e.what());
  }
  return c;
}

std::string RunConfig::to_json() const {
  ordered_json j;
  j["group"]["orders"] = orders;

  ordered_json a;
  a["kind"] = set.kind;
  if (set.kind == "interval") {
    a["start"] = set.start;
    a["length"] = set.length;
  } else if (set.kind == "random") {
    a["size"] = set.size;
  } else if (set.kind == "explicit") {
    a["indices"] = set.indices;
  } else if (set.kind == "cells") {
    a["cell_bits"] = set.cell_bits;
    a["full"] = set.full_cells;
    a["half"] = set.half_cells;
  }
  j["a"] = a;

  ordered_json w;
  w["kind"] = weight.kind;
  if (weight.kind == "constant") w["value"] = weight.value;
  if (weight.kind == "explicit") w["values"] = weight.values;
  if (weight.kind == "ramp") {
    w["low"] = weight.low;
    w["high"] = weight.high;
  }
  j["weight"] = w;

  ordered_json p;
  p["kind"] = pair.kind;
  if (pair.kind == "gapped") {
    ordered_json blocks = ordered_json::array();
    for (const auto& blk : pair.blocks) {
      blocks.push_back({{"start", blk.start}, {"width", blk.width}});
    }
    p["blocks"] = blocks;
    p["mirror"] = pair.mirror;
  } else {
    p["R"] = pair.R;
    p["S"] = pair.S;
  }
  ordered_json adm;
  adm["kind"] = pair.admissible.kind;
  if (pair.admissible.kind == "boxes") adm["caps"] = pair.admissible.caps;
  if (pair.admissible.kind == "dyadic-blocks") {
    adm["max_bits"] = pair.admissible.max_bits;
  }
  p["admissible"] = adm;
  j["pair"] = p;

  ordered_json b;
  b["kind"] = basis.kind;
  if (basis.kind == "solid") b["member_cap"] = basis.member_cap;
  if (basis.kind == "explicit") b["members"] = basis.members;
  j["basis"] = b;

  ordered_json s;
  s["epsilon"] = schedules.epsilon;
  s["n_max"] = schedules.n_max;
  s["g_tol"] = schedules.g_tol;
  if (!schedules.t.empty()) s["t"] = schedules.t;
  if (!schedules.rho.empty()) s["rho"] = schedules.rho;
  j["schedules"] = s;

  if (partition_style) j["partition_style"] = *partition_style;
  if (window_style) j["window_style"] = *window_style;
  j["checks"]["sufficiency"] = check_sufficiency;
  j["checks"]["coordination"] = check_coordination;
  j["seed"] = seed;
  j["svg"] = svg;
  if (!output_dir.empty()) j["output_dir"] = output_dir;
  if (!eps_list.empty()) j["eps_list"] = eps_list;
  return j.dump(2) + "\n";
}

ResolvedConfig resolve(const RunConfig& config) {
  ResolvedConfig r;
  r.group = make_group(config.orders);
  const auto n = static_cast<std::uint32_t>(r.group->size());
  Rng rng(config.seed);

  // The set a.
  if (config.set.kind == "interval") {
    if (config.set.length > n) {
      fail(ErrorCode::ConfigError, "interval set length exceeds |G|");
    }
    std::vector<std::uint32_t> idx(config.set.length);
    for (std::uint32_t i = 0; i < config.set.length; ++i) {
      idx[i] = (config.set.start + i) % n;
    }
    r.a = IndexSet(r.group, std::move(idx));
  } else if (config.set.kind == "random") {
    if (config.set.size > n) {
      fail(ErrorCode::ConfigError, "random set size exceeds |G|");
    }
    r.a = IndexSet(r.group, rng.sample(n, config.set.size));
  } else if (config.set.kind == "explicit") {
    r.a = IndexSet(r.group, config.set.indices);
  } else if (config.set.kind == "cells") {
    if (!r.group->is_dyadic()) {
      fail(ErrorCode::ConfigError, "cell sets need a dyadic group");
    }
    const std::size_t cells = std::size_t{1} << config.set.cell_bits;
    if (cells > r.group->size() ||
        config.set.full_cells + config.set.half_cells >
            static_cast<int>(cells)) {
      fail(ErrorCode::ConfigError, "cell counts exceed the group");
    }
    const std::size_t fiber = r.group->size() / cells;
    // Seeded assignment of cell types.
    std::vector<int> type(cells, 0);  // 0 empty, 1 half, 2 full
    std::vector<std::uint32_t> order(cells);
    for (std::uint32_t i = 0; i < cells; ++i) order[i] = i;
    for (std::uint32_t i = 0; i + 1 < cells; ++i) {
      std::swap(order[i], order[i + rng.below(cells - i)]);
    }
    for (int i = 0; i < config.set.full_cells; ++i) type[order[i]] = 2;
    for (int i = 0; i < config.set.half_cells; ++i) {
      type[order[config.set.full_cells + i]] = 1;
    }
    std::vector<std::uint32_t> idx;
    for (std::size_t cell = 0; cell < cells; ++cell) {
      if (type[cell] == 0) continue;
      for (std::size_t hi = 0; hi < fiber; ++hi) {
        if (type[cell] == 1 && hi >= fiber / 2) break;
        idx.push_back(static_cast<std::uint32_t>(cell + hi * cells));
      }
    }
    r.a = IndexSet(r.group, std::move(idx));
  } else {
    fail(ErrorCode::ConfigError, "unknown set kind: " + config.set.kind);
  }

  // The weight.
  if (config.weight.kind == "constant") {
    r.w = GroupFunction::constant(r.group, config.weight.value);
  } else if (config.weight.kind == "explicit") {
    if (config.weight.values.size() != r.group->size()) {
      fail(ErrorCode::ConfigError, "weight vector length must match |G|");
    }
    std::vector<cplx> v(r.group->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = config.weight.values[i];
    r.w = GroupFunction(r.group, std::move(v));
  } else if (config.weight.kind == "ramp") {
    std::vector<cplx> v(r.group->size());
    const double span = static_cast<double>(r.group->size() - 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = config.weight.low +
             (config.weight.high - config.weight.low) * (span > 0 ? i / span : 0.0);
    }
    r.w = GroupFunction(r.group, std::move(v));
  } else {
    fail(ErrorCode::ConfigError, "unknown weight kind: " + config.weight.kind);
  }

  // The pair and its admissible family.
  AdmissibleFamily family;
  if (config.pair.admissible.kind == "boxes") {
    family = AdmissibleFamily::boxes(r.group, config.pair.admissible.caps);
  } else if (config.pair.admissible.kind == "dyadic-blocks") {
    family = AdmissibleFamily::dyadic_blocks(r.group, config.pair.admissible.max_bits);
  } else {
    fail(ErrorCode::ConfigError,
         "unknown admissible family kind: " + config.pair.admissible.kind);
  }
  if (config.pair.kind == "gapped") {
    if (config.pair.blocks.empty()) {
      fail(ErrorCode::ConfigError, "gapped pair needs at least one block");
    }
    std::vector<std::uint32_t> s_idx;
    for (const auto& blk : config.pair.blocks) {
      for (std::uint32_t i = 0; i < blk.width; ++i) {
        s_idx.push_back((blk.start + i) % n);
      }
    }
    IndexSet S(r.group, std::move(s_idx));
    r.pair = SufficientPair{config.pair.mirror ? S.negated() : S, S, family};
  } else if (config.pair.kind == "explicit") {
    r.pair = SufficientPair{IndexSet(r.group, config.pair.R),
                            IndexSet(r.group, config.pair.S), family};
  } else {
    fail(ErrorCode::ConfigError, "unknown pair kind: " + config.pair.kind);
  }

  // The summation basis.
  if (config.basis.kind == "symmetric-interval") {
    r.basis = SummationBasis::symmetric_interval(r.group);
  } else if (config.basis.kind == "walsh-prefix") {
    r.basis = SummationBasis::walsh_prefix(r.group);
  } else if (config.basis.kind == "solid") {
    r.basis = SummationBasis::solid(r.group, config.basis.member_cap);
  } else if (config.basis.kind == "explicit") {
    std::vector<IndexSet> members;
    members.reserve(config.basis.members.size());
    for (const auto& m : config.basis.members) members.emplace_back(r.group, m);
    r.basis = SummationBasis::explicit_list(r.group, std::move(members));
  } else {
    fail(ErrorCode::ConfigError, "unknown basis kind: " + config.basis.kind);
  }

  // Schedules.
  bool unit_weight = config.weight.kind == "constant" &&
                     std::abs(config.weight.value - 1.0) < 1e-14;
  r.schedules = Schedules::defaults(config.schedules.epsilon, unit_weight,
                                    config.schedules.n_max,
                                    config.schedules.g_tol);
  if (!config.schedules.t.empty()) r.schedules.t = config.schedules.t;
  if (!config.schedules.rho.empty()) r.schedules.rho = config.schedules.rho;
  r.schedules.validate(unit_weight);

  // Options.
  if (config.partition_style) {
    if (*config.partition_style == "triangle") {
      r.options.partition_style = Partition::Style::Triangle;
    } else if (*config.partition_style == "coset") {
      r.options.partition_style = Partition::Style::Coset;
    } else {
      fail(ErrorCode::ConfigError, "unknown partition style");
    }
  }
  if (config.window_style) {
    if (*config.window_style == "interval") {
      r.options.window_style = SpectrumWindow::Style::Interval;
    } else if (*config.window_style == "subgroup") {
      r.options.window_style = SpectrumWindow::Style::Subgroup;
    } else {
      fail(ErrorCode::ConfigError, "unknown window style");
    }
  }
  r.options.check_sufficiency = config.check_sufficiency;
  r.options.check_coordination = config.check_coordination;
  return r;
}

}  // namespace scf
