// Command-line front end for the freezing / convergent cellular automata
// toolkit: simulation, rendering, classification, prediction, counter-machine
// compilation, shrinking-zone experiments, communication metering, bounded
// reachability, and limit analysis.

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "fca/classify.hpp"
#include "fca/commproto.hpp"
#include "fca/engine.hpp"
#include "fca/io.hpp"
#include "fca/minsky.hpp"
#include "fca/predict.hpp"
#include "fca/szone.hpp"
#include "fca/zoo.hpp"

using namespace fca;

namespace {

// Relative output paths land in FCA_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
  const char* dir = std::getenv("FCA_OUT_DIR");
  if (!dir || path.empty() || path.front() == '/') return path;
  return std::string(dir) + "/" + path;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(resolve_out(path));
  if (!out) fail(ErrorKind::Format, "cannot write file: " + path);
  return out;
}

std::vector<StateId> parse_state_list(const Alphabet& alpha, const std::string& csv) {
  std::vector<StateId> out;
  std::string cur;
  std::istringstream in(csv);
  while (std::getline(in, cur, ',')) out.push_back(alpha.id(cur));
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::string cur;
  std::istringstream in(csv);
  while (std::getline(in, cur, ',')) out.push_back(std::stoll(cur));
  return out;
}

int cmd_simulate(const std::string& rule_path, const std::string& config_path,
                 std::int64_t steps, std::int64_t window, const std::string& out_path) {
  auto ca = load_rule(rule_path);
  auto c = load_configuration(config_path, ca.alphabet());
  auto orbit = simulate(ca, c, steps);
  std::cout << "rule: " << (ca.name().empty() ? rule_path : ca.name()) << "\n";
  std::cout << "steps: " << steps << "\n";
  std::cout << "overrides: " << orbit.back().overrides().size() << "\n";
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    write_configuration(out, orbit.back(), ca.alphabet());
  } else if (ca.dim() == 1) {
    for (const auto& conf : orbit) {
      for (std::int64_t z = -window; z <= window; ++z)
        std::cout << (z > -window ? " " : "") << ca.alphabet().name(conf.at({z}));
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_render(const std::string& rule_path, const std::string& config_path,
               std::int64_t steps, std::int64_t window, const std::string& out_path) {
  auto ca = load_rule(rule_path);
  auto c = load_configuration(config_path, ca.alphabet());
  auto out = open_out(out_path);
  if (ca.dim() == 1)
    render_space_time(out, ca, c, steps, window);
  else
    render_snapshot(out, ca, c, steps, window);
  std::cout << "rendered: " << out_path << "\n";
  return 0;
}

int cmd_classify_freezing(const std::string& rule_path) {
  auto ca = load_rule(rule_path);
  auto verdict = check_freezing(ca);
  if (auto* fr = std::get_if<Freezing>(&verdict)) {
    std::cout << "freezing: yes\n";
    std::cout << "comparabilities: " << fr->comparabilities.size() << "\n";
    return 0;
  }
  const auto& cyc = std::get<NotFreezing>(verdict).cycle;
  std::cout << "freezing: no\n";
  std::cout << "cycle:";
  for (StateId s : cyc) std::cout << " " << ca.alphabet().name(s);
  std::cout << "\n";
  return 0;
}

int cmd_classify_changes(const std::string& rule_path, const std::string& config_path,
                         std::int64_t window, std::int64_t horizon) {
  auto ca = load_rule(rule_path);
  auto c = load_configuration(config_path, ca.alphabet());
  auto prof = change_profile(ca, {c}, window, horizon);
  std::cout << "max-changes-observed: " << prof.max_changes_observed << "\n";
  std::cout << "horizon: " << prof.horizon << "\n";
  std::cout << "samples: " << prof.sample_count << "\n";
  return 0;
}

int cmd_classify_nilpotent(const std::string& rule_path, const std::string& cert,
                           const std::string& witness_out) {
  auto ca = load_rule(rule_path);
  ConvergenceCertificate certificate = ConvergenceCertificate::None;
  if (cert == "freezing") certificate = ConvergenceCertificate::Freezing;
  if (cert == "assumed") certificate = ConvergenceCertificate::AssumedConvergent;
  auto verdict = decide_nilpotency_1d(ca, certificate);
  if (std::holds_alternative<Nilpotent>(verdict)) {
    std::cout << "nilpotent: yes\n";
    return 0;
  }
  const auto& witnesses = std::get<NotNilpotent>(verdict).witnesses;
  std::cout << "nilpotent: no\n";
  std::cout << "fixed-points: " << witnesses.size() << "\n";
  if (!witness_out.empty()) {
    for (std::size_t i = 0; i < witnesses.size(); ++i) {
      auto out = open_out(witness_out + "." + std::to_string(i));
      write_configuration(out, witnesses[i], ca.alphabet());
    }
  }
  return 0;
}

int cmd_classify_fixedpoints(const std::string& rule_path,
                             const std::string& witness_out) {
  auto ca = load_rule(rule_path);
  auto census = census_fixed_points(ca);
  if (auto* two = std::get_if<AtLeastTwo>(&census)) {
    std::cout << "fixed-points: at-least-two\n";
    if (!witness_out.empty()) {
      for (std::size_t i = 0; i < two->witnesses.size(); ++i) {
        auto out = open_out(witness_out + "." + std::to_string(i));
        write_configuration(out, two->witnesses[i], ca.alphabet());
      }
    }
  } else if (auto* one = std::get_if<ExactlyOneUniform>(&census)) {
    std::cout << "fixed-points: exactly-one-uniform\n";
    std::cout << "state: " << ca.alphabet().name(one->state) << "\n";
  } else {
    std::cout << "fixed-points: none-found\n";
  }
  return 0;
}

int cmd_predict(const std::string& engine, const std::string& rule_path,
                const std::string& pattern_path, std::int64_t t, std::int64_t k,
                const std::string& target) {
  auto ca = load_rule(rule_path);
  auto p = load_pattern(pattern_path, ca.alphabet());
  auto inst = make_instance(ca, t, p, target.empty() ? 0 : ca.alphabet().id(target));
  StateId got = 0;
  if (k < 0) k = static_cast<std::int64_t>(ca.alphabet().size()) - 1;
  if (engine == "naive")
    got = predict_naive(ca, inst);
  else if (engine == "stream")
    got = predict_oneway_stream(ca, inst, k);
  else if (engine == "search")
    got = predict_column_search(ca, inst, k);
  else
    fail(ErrorKind::Format, "unknown engine: " + engine);
  std::cout << "state: " << ca.alphabet().name(got) << "\n";
  if (!target.empty())
    std::cout << "matches-target: " << (got == inst.target ? "yes" : "no") << "\n";
  return 0;
}

int cmd_compile_minsky(const std::string& machine_path, const std::string& out_path,
                       const std::string& input, const std::string& pattern_out,
                       const std::string& config_out) {
  auto m = load_machine(machine_path);
  auto compiled = compile_minsky(m);
  std::cout << "states: " << compiled.ca().alphabet().size() << "\n";
  std::cout << "countdown: " << compiled.K() << "\n";
  std::cout << "freezing: " << (is_freezing(compiled.ca()) ? "yes" : "no") << "\n";
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    write_rule(out, compiled.ca());
  }
  if (!input.empty()) {
    auto enc = encode_input(compiled, parse_int_list(input));
    if (!pattern_out.empty()) {
      auto out = open_out(pattern_out);
      write_pattern(out, enc.pattern, compiled.ca().alphabet());
    }
    if (!config_out.empty()) {
      auto out = open_out(config_out);
      write_configuration(out, enc.canonical, compiled.ca().alphabet());
    }
  }
  return 0;
}

int cmd_szone_build(const std::string& rule_path, const std::string& out_path,
                    const std::string& erase) {
  auto inner = load_rule(rule_path);
  auto sz = erase.empty() ? build_szone(inner)
                          : build_szone_erasing(inner, inner.alphabet().id(erase));
  std::cout << "states: " << sz.ca().alphabet().size() << "\n";
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    write_rule(out, sz.ca());
  }
  return 0;
}

int cmd_szone_lambda(const std::string& rule_path, std::int64_t n,
                     const std::string& config_path, const std::string& config2_path,
                     const std::string& out_path) {
  auto inner = load_rule(rule_path);
  Configuration c = config_path.empty()
                        ? Configuration::uniform(1, 0)
                        : load_configuration(config_path, inner.alphabet());
  Configuration c2 = config2_path.empty()
                         ? c
                         : load_configuration(config2_path, inner.alphabet());
  auto sz = build_szone(inner);
  auto lam = make_lambda(sz, n, c, c2);
  auto out = open_out(out_path);
  write_configuration(out, lam.realized, sz.ca().alphabet());
  std::cout << "zone-cells: " << 2 * n + 1 << "\n";
  return 0;
}

int cmd_szone_verify(const std::string& rule_path, std::int64_t n, std::int64_t t,
                     const std::string& config_path) {
  auto inner = load_rule(rule_path);
  Configuration c = config_path.empty()
                        ? Configuration::uniform(1, 0)
                        : load_configuration(config_path, inner.alphabet());
  auto sz = build_szone(inner);
  auto check = verify_timing(sz, c, n, t);
  std::cout << "pass-time: " << check.pass_time << "\n";
  std::cout << "ok: " << (check.ok ? "yes" : "no") << "\n";
  for (const auto& m : check.mismatches) std::cout << "mismatch: " << m << "\n";
  return check.ok ? 0 : 1;
}

int cmd_commcc(const std::string& protocol, const std::string& rule_path,
               std::int64_t n, std::int64_t k, const std::string& pattern_path,
               std::int64_t samples, std::uint64_t seed, const std::string& csv_path) {
  auto ca = load_rule(rule_path);
  if (k < 0) k = static_cast<std::int64_t>(ca.alphabet().size()) - 1;
  std::ofstream csv;
  if (!csv_path.empty()) {
    csv = open_out(csv_path);
    csv << "# seed: " << seed << "\n";
    csv << "n,sample,total_bits,init_bits,counter_bits,diff_bits,answer\n";
  }
  auto run_one = [&](const SplitInstance& inst, std::int64_t sample) {
    ProtocolTranscript tr = protocol == "trivial"
                                ? run_trivial_protocol(ca, inst)
                                : run_diffreport_protocol(ca, inst, k);
    std::cout << "n: " << inst.n << "\n";
    std::cout << "total-bits: " << tr.total_bits << "\n";
    std::cout << "init-bits: " << tr.bits_with_tag(RoundTag::Init) << "\n";
    std::cout << "counter-bits: " << tr.bits_with_tag(RoundTag::Counter) << "\n";
    std::cout << "diff-bits: " << tr.bits_with_tag(RoundTag::DiffReport) << "\n";
    std::cout << "answer: " << ca.alphabet().name(tr.answer) << "\n";
    if (csv.is_open())
      csv << inst.n << "," << sample << "," << tr.total_bits << ","
          << tr.bits_with_tag(RoundTag::Init) << ","
          << tr.bits_with_tag(RoundTag::Counter) << ","
          << tr.bits_with_tag(RoundTag::DiffReport) << ","
          << ca.alphabet().name(tr.answer) << "\n";
  };
  if (!pattern_path.empty()) {
    auto p = load_pattern(pattern_path, ca.alphabet());
    run_one(SplitInstance::from_pattern(ca, n, p), 0);
  } else {
    std::cout << "seed: " << seed << "\n";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dist(0, ca.alphabet().size() - 1);
    for (std::int64_t s = 0; s < samples; ++s) {
      Pattern p(ca.dim(), ca.radius() * n);
      for (auto& st : p.cells()) st = static_cast<StateId>(dist(rng));
      run_one(SplitInstance::from_pattern(ca, n, p), s);
    }
  }
  return 0;
}

int cmd_reach(const std::string& rule_path, const std::string& u_path,
              const std::string& v_path, std::int64_t t_max, std::int64_t ext,
              const std::string& backgrounds, const std::string& witness_out) {
  auto ca = load_rule(rule_path);
  auto u = load_pattern(u_path, ca.alphabet());
  auto v = load_pattern(v_path, ca.alphabet());
  auto res = cyreach_bounded(ca, u, v, t_max, ext,
                             parse_state_list(ca.alphabet(), backgrounds));
  if (auto* reached = std::get_if<Reached>(&res)) {
    std::cout << "reached: yes\n";
    std::cout << "time: " << reached->time << "\n";
    if (!witness_out.empty()) {
      auto out = open_out(witness_out);
      write_configuration(out, reached->witness, ca.alphabet());
    }
    return 0;
  }
  std::cout << "reached: unknown\n";
  std::cout << "candidates-tried: " << std::get<Unknown>(res).candidates_tried << "\n";
  return 0;
}

int cmd_limit_window(const std::string& rule_path, const std::string& config_path,
                     std::int64_t radius, std::int64_t horizon,
                     std::int64_t confirm, const std::string& out_path) {
  auto ca = load_rule(rule_path);
  auto c = load_configuration(config_path, ca.alphabet());
  auto lw = limit_window(ca, c, radius, horizon, confirm);
  std::int64_t witnessed = 0;
  for (const auto& rep : lw.reports) witnessed += rep.freezing_time.has_value();
  std::cout << "cells: " << lw.reports.size() << "\n";
  std::cout << "witnessed: " << witnessed << "\n";
  for (const auto& rep : lw.reports) {
    std::cout << "cell";
    for (auto v : rep.cell) std::cout << " " << v;
    if (rep.freezing_time)
      std::cout << ": time " << *rep.freezing_time << " state "
                << ca.alphabet().name(*rep.limit_state)
                << (rep.guarantee == FreezeGuarantee::ExactMinimal ? " exact"
                                                                   : " observed");
    else
      std::cout << ": unwitnessed";
    std::cout << "\n";
  }
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    write_pattern(out, lw.limit, ca.alphabet());
  }
  return 0;
}

int cmd_limit_segment(const std::string& rule_path, const std::string& config_path,
                      std::int64_t z, std::int64_t zp, std::int64_t k,
                      std::int64_t oracle_horizon) {
  auto ca = load_rule(rule_path);
  auto c = load_configuration(config_path, ca.alphabet());
  if (k < 0) k = static_cast<std::int64_t>(ca.alphabet().size()) - 1;
  // Long-simulation oracle for the exact endpoint change counts.
  std::int64_t lz = 0, lzp = 0;
  {
    Configuration cur = c;
    StateId pz = cur.at({z}), pzp = cur.at({zp});
    for (std::int64_t t = 1; t <= oracle_horizon; ++t) {
      cur = step(ca, cur);
      if (cur.at({z}) != pz) ++lz, pz = cur.at({z});
      if (cur.at({zp}) != pzp) ++lzp, pzp = cur.at({zp});
    }
  }
  auto seg = limit_segment_with_counts(ca, c, z, zp, lz, lzp, k);
  std::cout << "lambda-z: " << lz << "\n";
  std::cout << "lambda-zp: " << lzp << "\n";
  std::cout << "segment:";
  for (StateId s : seg) std::cout << " " << ca.alphabet().name(s);
  std::cout << "\n";
  return 0;
}

int cmd_zoo_list() {
  for (const auto& e : zoo_entries())
    std::cout << e.name << ": " << e.expected_class << "\n";
  return 0;
}

int cmd_zoo_atam(const std::string& tiles_path, const std::string& out_path,
                 bool closure) {
  auto sys = load_tileset(tiles_path);
  auto ca = atam_to_ca(sys);
  std::cout << "tiles: " << sys.tiles().size() << "\n";
  std::cout << "states: " << ca.alphabet().size() << "\n";
  if (closure) {
    auto cl = atam_closure(sys);
    std::cout << "assemblies: " << cl.explored << "\n";
    std::cout << "terminal: " << cl.terminal.size() << "\n";
    std::cout << "directed: " << (cl.terminal.size() == 1 ? "yes" : "no") << "\n";
  }
  if (!out_path.empty()) {
    auto out = open_out(out_path);
    write_rule(out, ca);
  }
  return 0;
}

int cmd_zoo_emit(const std::string& name, const std::string& out_path) {
  auto ca = zoo_build(name);
  auto out = open_out(out_path);
  write_rule(out, ca);
  std::cout << "emitted: " << name << "\n";
  std::cout << "states: " << ca.alphabet().size() << "\n";
  return 0;
}

int cmd_verify_minsky(const std::string& machine_path, const std::string& input,
                      std::int64_t t_max) {
  auto m = load_machine(machine_path);
  auto compiled = compile_minsky(m);
  auto chis = input.empty() ? std::vector<std::int64_t>(m.counters(), 0)
                            : parse_int_list(input);
  bool all_ok = true;

  const bool freezing = is_freezing(compiled.ca());
  std::cout << "freezing: " << (freezing ? "yes" : "no") << "\n";
  all_ok = all_ok && freezing;

  // Column-by-column agreement with the interpreter.
  auto run = minsky_run(m, {m.initial(), chis}, t_max);
  const std::int64_t steps =
      std::holds_alternative<Halted>(run) ? std::get<Halted>(run).time : t_max;
  std::int64_t max_counter = 0;
  {
    MinskyConfig cfg{m.initial(), chis};
    for (std::int64_t s = 0; s <= steps; ++s) {
      for (auto v : cfg.counters) max_counter = std::max(max_counter, v);
      cfg = minsky_step(m, cfg);
    }
  }
  auto enc = encode_input(compiled, chis);
  const std::int64_t horizon = column_horizon(compiled, steps, max_counter);
  MinskyConfig cfg{m.initial(), chis};
  bool columns_ok = true;
  for (std::int64_t s = 0; s <= steps; ++s) {
    auto reading = read_column(compiled, enc.canonical, s, horizon);
    if (!reading.valid || !reading.m_state || *reading.m_state != cfg.state)
      columns_ok = false;
    else
      for (int i = 0; i < m.counters(); ++i)
        if (reading.counter_values[static_cast<std::size_t>(i)].count !=
            cfg.counters[static_cast<std::size_t>(i)])
          columns_ok = false;
    cfg = minsky_step(m, cfg);
  }
  std::cout << "columns-match-interpreter: " << (columns_ok ? "yes" : "no") << "\n";
  all_ok = all_ok && columns_ok;

  // Halting information both ways.
  auto witness = halting_witness(compiled, chis, horizon);
  const bool machine_halts = std::holds_alternative<Halted>(run);
  const bool ca_halts = std::holds_alternative<HaltsWithH>(witness);
  std::cout << "machine-halts: " << (machine_halts ? "yes" : "no") << "\n";
  std::cout << "halt-reaches-start-cell: " << (ca_halts ? "yes" : "no") << "\n";
  all_ok = all_ok && (machine_halts == ca_halts);

  // Change maximum at the countdown origin.
  auto empty_run = minsky_run(m, {m.initial(), std::vector<std::int64_t>(
                                                   m.counters(), 0)},
                              t_max);
  const bool halts_empty = std::holds_alternative<Halted>(empty_run);
  auto changes = max_change_witness(compiled, compiled.K() + 1,
                                    column_horizon(compiled, steps + 4, max_counter));
  std::cout << "max-changes: " << changes.changes << "\n";
  std::cout << "expected-max-changes: "
            << (halts_empty ? compiled.K() + 5 : compiled.K() + 4) << "\n";
  if (halts_empty)
    all_ok = all_ok && changes.changes == compiled.K() + 5;
  else
    all_ok = all_ok && changes.changes <= compiled.K() + 4;

  std::cout << "ok: " << (all_ok ? "yes" : "no") << "\n";
  return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"freezing / convergent cellular automata toolkit"};
  app.require_subcommand(1);

  std::string rule_path, config_path, config2_path, out_path, pattern_path;
  std::string machine_path, u_path, v_path, witness_out, csv_path;
  std::string engine = "naive", certificate = "freezing", target, erase, input;
  std::string backgrounds;
  std::string zoo_name, protocol = "diffreport";
  std::int64_t steps = 0, window = 10, horizon = 100, confirm = 4;
  std::int64_t t = 1, k = -1, n = 1, t_max = 100, ext = 0, z = 0, zp = 0;
  std::int64_t samples = 1, radius = 4, oracle_horizon = 2000;
  std::uint64_t seed = 0;

  auto* sim = app.add_subcommand("simulate", "run a rule on a configuration");
  sim->add_option("--rule", rule_path)->required();
  sim->add_option("--config", config_path)->required();
  sim->add_option("--steps", steps)->required();
  sim->add_option("--window", window);
  sim->add_option("--out", out_path);

  auto* ren = app.add_subcommand("render", "PGM space-time diagram or snapshot");
  ren->add_option("--rule", rule_path)->required();
  ren->add_option("--config", config_path)->required();
  ren->add_option("--steps", steps)->required();
  ren->add_option("--window", window);
  ren->add_option("--out", out_path)->required();

  auto* cls = app.add_subcommand("classify", "structural classification");
  cls->require_subcommand(1);
  auto* fr = cls->add_subcommand("freezing");
  fr->add_option("--rule", rule_path)->required();
  auto* ch = cls->add_subcommand("changes");
  ch->add_option("--rule", rule_path)->required();
  ch->add_option("--config", config_path)->required();
  ch->add_option("--window", window);
  ch->add_option("--horizon", horizon);
  auto* nil = cls->add_subcommand("nilpotent1d");
  nil->add_option("--rule", rule_path)->required();
  nil->add_option("--certificate", certificate);
  nil->add_option("--witness-out", witness_out);
  auto* fp = cls->add_subcommand("fixedpoints");
  fp->add_option("--rule", rule_path)->required();
  fp->add_option("--witness-out", witness_out);

  auto* pred = app.add_subcommand("predict", "short-term prediction");
  pred->add_option("--engine", engine);
  pred->add_option("--rule", rule_path)->required();
  pred->add_option("--pattern", pattern_path)->required();
  pred->add_option("--t", t)->required();
  pred->add_option("--k", k);
  pred->add_option("--target", target);

  auto* comp = app.add_subcommand("compile", "compile other models to rules");
  comp->require_subcommand(1);
  auto* cm = comp->add_subcommand("minsky");
  cm->add_option("--machine", machine_path)->required();
  cm->add_option("--out", out_path);
  cm->add_option("--input", input);
  cm->add_option("--pattern-out", pattern_path);
  cm->add_option("--config-out", config_path);

  auto* sz = app.add_subcommand("szone", "shrinking-zone constructions");
  sz->require_subcommand(1);
  auto* szb = sz->add_subcommand("build");
  szb->add_option("--rule", rule_path)->required();
  szb->add_option("--out", out_path);
  szb->add_option("--erase", erase);
  auto* szl = sz->add_subcommand("lambda");
  szl->add_option("--rule", rule_path)->required();
  szl->add_option("--n", n)->required();
  szl->add_option("--config", config_path);
  szl->add_option("--config2", config2_path);
  szl->add_option("--out", out_path)->required();
  auto* szv = sz->add_subcommand("verify");
  szv->add_option("--rule", rule_path)->required();
  szv->add_option("--n", n)->required();
  szv->add_option("--t", t)->required();
  szv->add_option("--config", config_path);

  auto* cc = app.add_subcommand("commcc", "communication metering");
  cc->add_option("--protocol", protocol);
  cc->add_option("--rule", rule_path)->required();
  cc->add_option("--n", n)->required();
  cc->add_option("--k", k);
  cc->add_option("--pattern", pattern_path);
  cc->add_option("--samples", samples);
  cc->add_option("--seed", seed);
  cc->add_option("--csv", csv_path);

  auto* rc = app.add_subcommand("reach", "bounded cylinder reachability");
  rc->add_option("--rule", rule_path)->required();
  rc->add_option("--u", u_path)->required();
  rc->add_option("--v", v_path)->required();
  rc->add_option("--tmax", t_max);
  rc->add_option("--ext", ext);
  rc->add_option("--backgrounds", backgrounds)->required();
  rc->add_option("--witness-out", witness_out);

  auto* lim = app.add_subcommand("limit", "limit configurations");
  lim->require_subcommand(1);
  auto* lw = lim->add_subcommand("window");
  lw->add_option("--rule", rule_path)->required();
  lw->add_option("--config", config_path)->required();
  lw->add_option("--radius", radius);
  lw->add_option("--horizon", horizon);
  lw->add_option("--confirm", confirm);
  lw->add_option("--out", out_path);
  auto* ls = lim->add_subcommand("segment");
  ls->add_option("--rule", rule_path)->required();
  ls->add_option("--config", config_path)->required();
  ls->add_option("--z", z)->required();
  ls->add_option("--zp", zp)->required();
  ls->add_option("--k", k);
  ls->add_option("--oracle-horizon", oracle_horizon);

  auto* zoo = app.add_subcommand("zoo", "stock rules");
  zoo->require_subcommand(1);
  zoo->add_subcommand("list");
  auto* ze = zoo->add_subcommand("emit");
  ze->add_option("name", zoo_name)->required();
  ze->add_option("--out", out_path)->required();
  bool atam_closure_flag = false;
  auto* za = zoo->add_subcommand("atam");
  za->add_option("--tiles", u_path)->required();
  za->add_option("--out", out_path);
  za->add_flag("--closure", atam_closure_flag);

  auto* ver = app.add_subcommand("verify", "construction checks");
  ver->require_subcommand(1);
  auto* vm = ver->add_subcommand("minsky");
  vm->add_option("--machine", machine_path)->required();
  vm->add_option("--input", input);
  vm->add_option("--tmax", t_max);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(rule_path, config_path, steps, window, out_path);
    if (ren->parsed()) return cmd_render(rule_path, config_path, steps, window, out_path);
    if (cls->parsed()) {
      if (fr->parsed()) return cmd_classify_freezing(rule_path);
      if (ch->parsed()) return cmd_classify_changes(rule_path, config_path, window, horizon);
      if (nil->parsed()) return cmd_classify_nilpotent(rule_path, certificate, witness_out);
      if (fp->parsed()) return cmd_classify_fixedpoints(rule_path, witness_out);
    }
    if (pred->parsed())
      return cmd_predict(engine, rule_path, pattern_path, t, k, target);
    if (comp->parsed() && cm->parsed())
      return cmd_compile_minsky(machine_path, out_path, input, pattern_path, config_path);
    if (sz->parsed()) {
      if (szb->parsed()) return cmd_szone_build(rule_path, out_path, erase);
      if (szl->parsed())
        return cmd_szone_lambda(rule_path, n, config_path, config2_path, out_path);
      if (szv->parsed()) return cmd_szone_verify(rule_path, n, t, config_path);
    }
    if (cc->parsed())
      return cmd_commcc(protocol, rule_path, n, k, pattern_path, samples, seed, csv_path);
    if (rc->parsed())
      return cmd_reach(rule_path, u_path, v_path, t_max, ext, backgrounds, witness_out);
    if (lim->parsed()) {
      if (lw->parsed())
        return cmd_limit_window(rule_path, config_path, radius, horizon, confirm, out_path);
      if (ls->parsed())
        return cmd_limit_segment(rule_path, config_path, z, zp, k, oracle_horizon);
    }
    if (zoo->parsed()) {
      if (ze->parsed()) return cmd_zoo_emit(zoo_name, out_path);
      if (za->parsed()) return cmd_zoo_atam(u_path, out_path, atam_closure_flag);
      return cmd_zoo_list();
    }
    if (ver->parsed() && vm->parsed())
      return cmd_verify_minsky(machine_path, input, t_max);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
