// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "chronoq/chain.hpp"
#include "chronoq/consensus.hpp"
#include "chronoq/entangle.hpp"
#include "chronoq/foundations.hpp"
#include "chronoq/games.hpp"
#include "chronoq/infotheory.hpp"
#include "chronoq/temporal.hpp"

namespace chronoq::cli {

namespace {

// Per-command random streams derived from the one global seed.
enum StreamId : std::uint64_t {
  kStateStream = 1,
  kEntangleStream,
  kEntropyStream,
  kSwapStream,
  kChainStream,
  kConsensusStream,
  kGameStream,
  kGleasonStream,
  kLgStream,
};

Json header(const std::string& command, const RunConfig& c) {
  Json j;
  j["command"] = command;
  j["seed"] = c.seed;
  return j;
}

void finish(Report& r, Json body, bool ok) {
  body["ok"] = ok;
  r.body = std::move(body);
  r.ok = ok;
  r.ran = true;
}

void merge(Json& into, const std::string& text) {
  const Json extra = Json::parse(text);
  for (const auto& [key, value] : extra.items()) into[key] = value;
}

Json complex_list(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Json::array({v(i).real(), v(i).imag()}));
  return out;
}

std::vector<Record> parse_records(const std::string& text) {
  std::vector<Record> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Record::parse(item));
  if (out.empty()) throw std::invalid_argument("no records given");
  return out;
}

Json events_json(const TemporalRegister& reg) {
  Json out = Json::array();
  std::stringstream ss(reg.event_log_jsonl());
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) out.push_back(Json::parse(line));
  return out;
}

Operator parse_gate(const std::string& name) {
  if (name == "X" || name == "Y" || name == "Z") return pauli(name[0]);
  return standard_gate(name);
}

// ------------------------------------------------------------------ state

void add_state(CLI::App& app, const RunConfig& c, Report& r) {
  auto* sub = app.add_subcommand("state", "Inspect a Bell or GHZ state");
  auto kind = std::make_shared<std::string>("bell");
  auto label = std::make_shared<std::string>("Phi+");
  auto qubits = std::make_shared<int>(3);
  sub->add_option("--kind", *kind, "bell | ghz")->check(CLI::IsMember({"bell", "ghz"}));
  sub->add_option("--label", *label, "Bell label: Phi+, Phi-, Psi+, Psi-");
  sub->add_option("--qubits", *qubits, "GHZ size")->check(CLI::Range(2, 12));
  sub->callback([&c, &r, kind, label, qubits] {
    Json j = header("state", c);
    const StateVector s = *kind == "bell" ? bell_state(parse_bell_label(*label)) : ghz_state(*qubits);
    const int n = s.num_qubits();
    j["kind"] = *kind;
    if (*kind == "bell") j["label"] = to_string(parse_bell_label(*label));
    j["qubits"] = n;
    j["amplitudes"] = complex_list(s.amplitudes());
    const std::vector<std::size_t> dims{2, s.dim() / 2};
    const SchmidtDecomposition sd = schmidt(s, dims);
    j["schmidt_coefficients"] = sd.coefficients;
    j["schmidt_rank"] = sd.rank();
    j["concurrence"] = concurrence(s, dims);
    const DensityOperator first = partial_trace(DensityOperator::pure(s), dims, {0});
    j["first_qubit_purity"] = purity(first);
    finish(r, std::move(j), true);
  });
}

// --------------------------------------------------------------- entangle

void add_entangle(CLI::App& app, const RunConfig& c, Report& r) {
  auto* sub = app.add_subcommand("entangle", "PPT, CHSH and Werner scans");
  sub->require_subcommand(1);

  auto* chsh = sub->add_subcommand("chsh", "Singlet with the reference settings");
  chsh->callback([&c, &r] {
    RandomSource rng(c.seed, kEntangleStream);
    const DensityOperator rho = DensityOperator::pure(bell_state(BellLabel::PsiMinus));
    const ObservableSettings s = reference_chsh_settings();
    const double analytic = chsh_value(rho, s);
    const ChshEstimate mc = chsh_monte_carlo(rho, s, c.trials, rng);
    Json j = header("entangle chsh", c);
    j["trials"] = c.trials;
    j["analytic"] = analytic;
    j["tsirelson"] = 2.0 * std::numbers::sqrt2;
    j["monte_carlo"] = mc.value;
    j["std_err"] = mc.std_err;
    j["correlators"] = mc.correlators;
    const bool ok = std::abs(analytic - 2.0 * std::numbers::sqrt2) <= c.tol &&
                    std::abs(mc.value - analytic) <= 3.0 * mc.std_err;
    finish(r, std::move(j), ok);
  });

  auto steps = std::make_shared<int>(11);
  auto* werner = sub->add_subcommand("werner", "Sweep the Werner family");
  werner->add_option("--steps", *steps, "Grid points over F in [0, 1]")->check(CLI::Range(2, 1001));
  werner->callback([&c, &r, steps] {
    Json j = header("entangle werner", c);
    Json rows = Json::array();
    for (int k = 0; k < *steps; ++k) {
      const double f = static_cast<double>(k) / static_cast<double>(*steps - 1);
      const WernerState w = werner_state(f);
      const double pt = ppt_min_eigenvalue(w.rho, {2, 2});
      const double s = chsh_optimize(w.rho).value;
      Json row;
      row["F"] = f;
      row["ppt_min_eigenvalue"] = pt;
      row["chsh_max"] = s;
      row["entangled"] = pt < -c.tol;
      row["chsh_violation"] = s > 2.0 + c.tol;
      rows.push_back(row);
    }
    j["rows"] = rows;
    j["chsh_crossing"] = werner_chsh_crossing();
    finish(r, std::move(j), true);
  });

  auto f = std::make_shared<double>(0.75);
  auto* ppt = sub->add_subcommand("ppt", "Partial-transpose spectrum of one Werner state");
  ppt->add_option("--F", *f, "Singlet weight")->check(CLI::Range(0.0, 1.0));
  ppt->callback([&c, &r, f] {
    const WernerState w = werner_state(*f);
    const Eigen::VectorXd ev = hermitian_eigenvalues(partial_transpose(w.rho, {2, 2}, TransposeSide::B));
    Json j = header("entangle ppt", c);
    j["F"] = *f;
    j["eigenvalues"] = std::vector<double>(ev.data(), ev.data() + ev.size());
    j["entangled"] = ev.minCoeff() < -c.tol;
    finish(r, std::move(j), true);
  });
}

// ---------------------------------------------------------------- entropy

void add_entropy(CLI::App& app, const RunConfig& c, Report& r) {
  auto* sub = app.add_subcommand("entropy", "Typical-set codec and uncertainty bound");
  sub->require_subcommand(1);

  auto n = std::make_shared<int>(20);
  auto p = std::make_shared<double>(0.11);
  auto rate = std::make_shared<double>(0.75);
  auto* codec = sub->add_subcommand("codec", "Fixed-rate typical-set codec round trip");
  codec->add_option("--n", *n, "Block length")->check(CLI::Range(1, kMaxCodecBlock));
  codec->add_option("--p", *p, "Bernoulli source P(1)")->check(CLI::Range(0.0, 1.0));
  codec->add_option("--rate", *rate, "Bits per symbol")->check(CLI::Range(0.0, 1.0));
  codec->callback([&c, &r, n, p, rate] {
    RandomSource rng(c.seed, kEntropyStream);
    const ProbDist src({1.0 - *p, *p});
    const TypicalCodec tc = TypicalCodec::from_rate(*n, *rate, src);
    const CodecRoundtrip rt = typical_codec_roundtrip(tc, c.trials, rng);
    Json j = header("entropy codec", c);
    j["n"] = *n;
    j["p"] = *p;
    j["entropy"] = shannon_entropy(src);
    j["rate"] = tc.rate();
    j["width"] = tc.width();
    j["codebook_size"] = tc.codebook_size();
    j["trials"] = rt.trials;
    j["success_rate"] = rt.success_rate;
    finish(r, std::move(j), true);
  });

  auto* unc = sub->add_subcommand("uncertainty", "H(X) + H(Z) on random qubit states");
  unc->callback([&c, &r] {
    RandomSource rng(c.seed, kEntropyStream);
    const Basis z = computational_basis(2);
    const double s = 1.0 / std::numbers::sqrt2;
    Vec plus(2), minus(2);
    plus << s, s;
    minus << s, -s;
    const Basis x{plus, minus};
    const double bound = entropic_uncertainty_bound(x, z);
    const std::size_t states = std::min<std::size_t>(c.trials, 100000);
    double worst = 1e300;
    for (std::size_t i = 0; i < states; ++i) {
      const StateVector psi = random_state(2, rng);
      worst = std::min(worst, entropy_bits(born_distribution(psi, x)) + entropy_bits(born_distribution(psi, z)));
    }
    Json j = header("entropy uncertainty", c);
    j["states"] = states;
    j["bound"] = bound;
    j["min_sum"] = worst;
    finish(r, std::move(j), worst >= bound - c.tol);
  });

  auto tn = std::make_shared<int>(12);
  auto tp = std::make_shared<double>(0.11);
  auto eps = std::make_shared<double>(0.1);
  auto* typ = sub->add_subcommand("typical", "Exhaustive typical-set size and mass");
  typ->add_option("--n", *tn, "Block length")->check(CLI::Range(1, kMaxCodecBlock));
  typ->add_option("--p", *tp, "Bernoulli source P(1)")->check(CLI::Range(0.0, 1.0));
  typ->add_option("--eps", *eps, "Typicality window")->check(CLI::PositiveNumber);
  typ->callback([&c, &r, tn, tp, eps] {
    const ProbDist src({1.0 - *tp, *tp});
    const double h = shannon_entropy(src);
    const std::uint64_t size = typical_set_size(*tn, src, *eps);
    const double mass = typical_set_probability(*tn, src, *eps);
    const double upper = std::exp2(*tn * (h + *eps));
    const double lower = (1.0 - *eps) * std::exp2(*tn * (h - *eps));
    Json j = header("entropy typical", c);
    j["n"] = *tn;
    j["entropy"] = h;
    j["size"] = size;
    j["probability"] = mass;
    j["upper_bound"] = upper;
    j["lower_bound_if_mass_exceeds_1_minus_eps"] = lower;
    bool ok = static_cast<double>(size) <= upper;
    if (mass > 1.0 - *eps) ok = ok && static_cast<double>(size) >= lower;
    finish(r, std::move(j), ok);
  });
}

// ------------------------------------------------------------------- swap

void add_swap(CLI::App& app, const RunConfig& c, Report& r) {
  auto* sub = app.add_subcommand("swap", "Entanglement swapping between photons that never coexist");
  auto label = std::make_shared<std::string>("Psi-");
  sub->add_option("--pair", *label, "Bell label of both source pairs");
  sub->callback([&c, &r, label] {
    RandomSource rng(c.seed, kSwapStream);
    const BellLabel pair = parse_bell_label(*label);
    const TemporalSwapRun run = temporal_swap(pair, computational_basis(2), computational_basis(2), rng);
    const StateVector outer = swap_outer_state(pair, run.middle.label);
    const double fid = overlap_sq(outer, bell_state(run.middle.label));
    const bool order = consumed_before_created(run.reg, run.photon1, run.photon4);
    Json j = header("swap", c);
    j["pair"] = to_string(pair);
    j["first_outcome"] = run.first_outcome;
    j["middle_outcome"] = to_string(run.middle.label);
    j["middle_probability"] = run.middle.probability;
    j["last_outcome"] = run.last_outcome;
    j["outer_pair_fidelity"] = fid;
    j["photon1_consumed_before_photon4_created"] = order;
    j["events"] = events_json(run.reg);
    finish(r, std::move(j), order && std::abs(fid - 1.0) <= c.tol);
  });
}

// ------------------------------------------------------------------ chain

void add_chain(CLI::App& app, const RunConfig& c, Report& r) {
  auto* sub = app.add_subcommand("chain", "Temporal-GHZ record chain");
  sub->require_subcommand(1);

  auto records = std::make_shared<std::string>("00,10,11");
  auto* demo = sub->add_subcommand("demo", "Build and decode a chain");
  demo->add_option("--records", *records, "Comma-separated two-bit records");
  demo->callback([&c, &r, records] {
    RandomSource rng(c.seed, kChainStream);
    const QuantumChain qc = build_chain(parse_records(*records), rng);
    const DecodeResult d = decode(qc);
    Json j = header("chain demo", c);
    j["records"] = qc.record_string();
    j["blocks"] = Json::parse(qc.to_json())["records"];
    j["timestamps"] = qc.timestamps();
    j["valid"] = qc.valid();
    j["fidelity"] = qc.fidelity();
    j["decode_status"] = to_string(d.status);
    j["decoded"] = d.bits;
    j["events"] = events_json(qc.reg());
    finish(r, std::move(j), qc.valid() && d.ok() && d.bits == qc.record_string());
  });

  auto trecords = std::make_shared<std::string>("00,10,11");
  auto photon = std::make_shared<int>(-1);
  auto gate = std::make_shared<std::string>("X");
  auto* tam = sub->add_subcommand("tamper", "Apply a gate to one chain photon");
  tam->add_option("--records", *trecords, "Comma-separated two-bit records");
  tam->add_option("--photon", *photon, "Photon index in qubit order (default: last)");
  tam->add_option("--gate", *gate, "X, Y, Z, H, S or T");
  tam->callback([&c, &r, trecords, photon, gate] {
    RandomSource rng(c.seed, kChainStream);
    const QuantumChain qc = build_chain(parse_records(*trecords), rng);
    const auto modes = qc.all_modes();
    const int idx = *photon < 0 ? static_cast<int>(modes.size()) - 1 : *photon;
    if (idx < 0 || idx >= static_cast<int>(modes.size())) throw std::out_of_range("photon index out of range");
    Json j = header("chain tamper", c);
    j["records"] = qc.record_string();
    j["photon"] = idx;
    j["gate"] = *gate;
    j["fidelity_before"] = qc.fidelity();
    try {
      const QuantumChain hit = tamper(qc, modes[static_cast<std::size_t>(idx)], parse_gate(*gate));
      const DecodeResult d = decode(hit);
      j["accessible"] = true;
      j["fidelity_after"] = hit.fidelity();
      j["valid_after"] = hit.valid();
      j["decode_status"] = to_string(d.status);
    } catch (const TemporalInaccessible& e) {
      j["accessible"] = false;
      j["error"] = e.what();
    }
    finish(r, std::move(j), true);
  });

  auto blocks = std::make_shared<std::size_t>(6);
  auto index = std::make_shared<std::size_t>(2);
  auto* con = sub->add_subcommand("contrast", "Classical hash chain versus quantum chain under tampering");
  con->add_option("--blocks", *blocks, "Chain length")->check(CLI::Range(1, 9));
  con->add_option("--index", *index, "Block to tamper with");
  con->callback([&c, &r, blocks, index] {
    RandomSource rng(c.seed, kChainStream);
    const TamperContrast t = classical_chain_tamper_contrast(*blocks, *index, rng);
    Json j = header("chain contrast", c);
    j["blocks"] = t.n_blocks;
    j["tamper_index"] = t.tamper_index;
    std::vector<int> valid;
    for (bool b : t.classical_valid) valid.push_back(b ? 1 : 0);
    j["classical_valid"] = valid;
    j["classical_first_invalid"] = t.classical_first_invalid;
    j["quantum_inaccessible"] = t.quantum_inaccessible;
    j["quantum_invalid_first"] = t.quantum_invalid_first;
    j["quantum_invalid_end"] = t.quantum_invalid_end;
    j["quantum_fidelity"] = t.quantum_fidelity;
    finish(r, std::move(j), t.classical_first_invalid == t.tamper_index);
  });
}

// -------------------------------------------------------------- consensus

DensityOperator candidate_state(const std::string& kind, int n, RandomSource& rng) {
  const DensityOperator ghz = DensityOperator::pure(ghz_state(n));
  if (kind == "ghz") return ghz;
  if (kind == "product") return DensityOperator::pure(StateVector::basis(std::size_t{1} << n, 0));
  if (kind == "mixed") return DensityOperator::maximally_mixed(std::size_t{1} << n);
  if (kind == "dephased") {
    // Phase flip with probability 0.1 on the first qubit.
    const DensityOperator flipped = apply_unitary(ghz, embed(pauli('Z'), {0}, n));
    return DensityOperator(0.9 * ghz.matrix() + 0.1 * flipped.matrix());
  }
  if (kind == "random") return random_density(std::size_t{1} << n, rng);
  throw std::invalid_argument("unknown candidate state '" + kind + "'");
}

void add_consensus(CLI::App& app, const RunConfig& c, Report& r) {
  auto* sub = app.add_subcommand("consensus", "GHZ verification and block admission");
  sub->require_subcommand(1);
  const auto states = CLI::IsMember({"ghz", "product", "mixed", "dephased", "random"});

  auto nodes = std::make_shared<int>(4);
  auto rounds = std::make_shared<std::size_t>(1000);
  auto dishonest = std::make_shared<int>(0);
  auto cheat = std::make_shared<std::string>("Z");
  auto kind = std::make_shared<std::string>("ghz");
  auto* run = sub->add_subcommand("run", "Estimate the pass probability");
  run->add_option("--nodes", *nodes, "Network size")->check(CLI::Range(2, 10));
  run->add_option("--rounds", *rounds, "Verification rounds")->check(CLI::PositiveNumber);
  run->add_option("--dishonest", *dishonest, "Dishonest nodes (the last ones)")->check(CLI::NonNegativeNumber);
  run->add_option("--cheat", *cheat, "Cheat gate: X, Y, Z, H, S, T or random");
  run->add_option("--state", *kind, "Candidate state")->check(states);
  run->callback([&c, &r, nodes, rounds, dishonest, cheat, kind] {
    if (*dishonest > *nodes) throw std::invalid_argument("more dishonest nodes than nodes");
    RandomSource rng(c.seed, kConsensusStream);
    const DensityOperator rho = candidate_state(*kind, *nodes, rng);
    Network net(static_cast<std::size_t>(*nodes), rng.next_u64());
    for (int k = *nodes - *dishonest; k < *nodes; ++k)
      net.set_cheat(static_cast<std::size_t>(k), *cheat == "random" ? random_unitary(2, rng) : parse_gate(*cheat));
    const PassEstimate est = estimate_pass_probability(rho, net, *rounds, rng);
    const double fid = ghz_fidelity(rho);
    Json j = header("consensus run", c);
    j["n"] = *nodes;
    j["rounds"] = *rounds;
    j["pass_rate"] = est.p;
    j["fidelity"] = fid;
    j["honest_bound_ok"] = *dishonest > 0 || fid >= 2.0 * est.p - 1.0 - 3.0 * est.std_err - c.tol;
    j["dishonest_bound_ok"] = true;
    j["state"] = *kind;
    j["dishonest"] = *dishonest;
    j["std_err"] = est.std_err;
    finish(r, std::move(j), j["honest_bound_ok"].get<bool>());
  });

  auto bnodes = std::make_shared<int>(4);
  auto honest = std::make_shared<int>(2);
  auto samples = std::make_shared<std::size_t>(20);
  auto brounds = std::make_shared<std::size_t>(2000);
  auto bkind = std::make_shared<std::string>("dephased");
  auto* bounds = sub->add_subcommand("bounds", "Check the honest and dishonest fidelity bounds");
  bounds->add_option("--nodes", *bnodes, "Network size")->check(CLI::Range(2, 8));
  bounds->add_option("--honest", *honest, "Honest nodes k")->check(CLI::PositiveNumber);
  bounds->add_option("--samples", *samples, "Sampled cheat strategies");
  bounds->add_option("--rounds", *brounds, "Rounds per estimate")->check(CLI::PositiveNumber);
  bounds->add_option("--state", *bkind, "Candidate state")->check(states);
  bounds->callback([&c, &r, bnodes, honest, samples, brounds, bkind] {
    RandomSource rng(c.seed, kConsensusStream);
    const DensityOperator rho = candidate_state(*bkind, *bnodes, rng);
    const FidelityBoundsReport rep =
        check_fidelity_bounds(rho, static_cast<std::size_t>(*honest), *samples, *brounds, rng);
    Json j = header("consensus bounds", c);
    merge(j, rep.to_json());
    j["honest"] = *honest;
    j["corrected_fidelity"] = rep.corrected_fidelity;
    j["slack"] = kDishonestSlack;
    Json cheats = Json::array();
    for (const auto& cc : rep.cheats) cheats.push_back(Json{{"pass_rate", cc.pass}, {"std_err", cc.std_err}, {"ok", cc.ok}});
    j["cheats"] = cheats;
    finish(r, std::move(j), rep.honest_bound_ok && rep.dishonest_bound_ok);
  });

  auto anodes = std::make_shared<int>(4);
  auto arounds = std::make_shared<std::size_t>(100);
  auto threshold = std::make_shared<double>(0.99);
  auto copies = std::make_shared<std::size_t>(0);
  auto akind = std::make_shared<std::string>("ghz");
  auto record = std::make_shared<std::string>("10");
  auto* admit = sub->add_subcommand("admit", "Admit a candidate block");
  admit->add_option("--nodes", *anodes, "Network size")->check(CLI::Range(2, 8));
  admit->add_option("--rounds", *arounds, "Verification rounds")->check(CLI::PositiveNumber);
  admit->add_option("--threshold", *threshold, "Acceptance threshold")->check(CLI::Range(0.0, 1.0));
  admit->add_option("--copies", *copies, "Candidate copies supplied (default: rounds)");
  admit->add_option("--state", *akind, "Candidate state")->check(states);
  admit->add_option("--record", *record, "Two-bit record appended on acceptance");
  admit->callback([&c, &r, anodes, arounds, threshold, copies, akind, record] {
    RandomSource rng(c.seed, kConsensusStream);
    const DensityOperator rho = candidate_state(*akind, *anodes, rng);
    Network net(static_cast<std::size_t>(*anodes), rng.next_u64());
    AdmitConfig cfg;
    cfg.rounds = *arounds;
    cfg.threshold = *threshold;
    cfg.copies = *copies == 0 ? *arounds : *copies;
    cfg.record = Record::parse(*record);
    const AdmitResult res = admit_block(net, rho, cfg);
    Json j = header("consensus admit", c);
    j["n"] = *anodes;
    j["rounds"] = res.rounds;
    j["threshold"] = *threshold;
    j["verifier"] = res.verifier;
    j["pass_rate"] = res.pass_rate;
    j["accepted"] = res.accepted;
    j["warnings"] = res.warnings;
    std::vector<std::string> chains;
    for (const auto& ch : net.local_chains()) chains.push_back(ch.record_string());
    j["local_chains"] = chains;
    finish(r, std::move(j), true);
  });
}

// ------------------------------------------------------------------- game

void add_game(CLI::App& app, const RunConfig& c, Report& r) {
  auto* sub = app.add_subcommand("game", "Probability games and communication protocols");
  sub->require_subcommand(1);
  const auto strat_check = CLI::IsMember({"stick", "switch"});

  auto add_door_game = [&](const std::string& name, const std::string& help, auto fn) {
    auto strategy = std::make_shared<std::string>("switch");
    auto* g = sub->add_subcommand(name, help);
    g->add_option("--strategy", *strategy, "stick | switch")->check(strat_check);
    g->callback([&c, &r, name, strategy, fn] {
      RandomSource rng(c.seed, kGameStream);
      const GameStats st = fn(parse_strategy(*strategy), c.trials, rng);
      Json j = header("game " + name, c);
      merge(j, st.to_json());
      finish(r, std::move(j), st.pass());
    });
  };
  add_door_game("monty-classic", "Three-door Monty Hall", monty_classic);
  add_door_game("monty-ignorant", "Monty opens a door at random", monty_ignorant);
  add_door_game("unreliable-teleport", "Teleportation with one classical bit lost", unreliable_teleport);
  add_door_game("pbr-ontic", "PBR game with Born prize probabilities",
                [](Strategy s, std::size_t t, RandomSource& rng) { return pbr_game(Ontology::ontic(), s, t, rng); });

  auto mt_strategy = std::make_shared<std::string>("switch");
  auto door = std::make_shared<int>(0);
  auto* mt = sub->add_subcommand("monty-teleport", "Teleportation as a four-door Monty Hall game");
  mt->add_option("--strategy", *mt_strategy, "stick | switch")->check(strat_check);
  mt->add_option("--door", *door, "Contestant door xy as 0..3")->check(CLI::Range(0, 3));
  mt->callback([&c, &r, mt_strategy, door] {
    RandomSource rng(c.seed, kGameStream);
    const GameStats st = monty_teleport(parse_strategy(*mt_strategy), c.trials, rng, *door);
    Json j = header("game monty-teleport", c);
    merge(j, st.to_json());
    finish(r, std::move(j), st.pass());
  });

  auto ep_strategy = std::make_shared<std::string>("switch");
  auto q = std::make_shared<std::string>("1/4");
  auto split = std::make_shared<std::string>();
  auto* ep = sub->add_subcommand("pbr-epistemic", "PBR game with a psi-epistemic leak q");
  ep->add_option("--strategy", *ep_strategy, "stick | switch")->check(strat_check);
  ep->add_option("--q", *q, "Leak probability, e.g. 1/4 or 0.1");
  ep->add_option("--split", *split, "q1,q2,q3 (default q/3 each)");
  ep->callback([&c, &r, ep_strategy, q, split] {
    RandomSource rng(c.seed, kGameStream);
    Ontology o;
    if (split->empty()) {
      o = Ontology::epistemic_q(parse_fraction(*q));
    } else {
      std::vector<Fraction> parts;
      std::stringstream ss(*split);
      std::string item;
      while (std::getline(ss, item, ',')) parts.push_back(parse_fraction(item));
      if (parts.size() != 3) throw std::invalid_argument("--split needs three values");
      o = Ontology::epistemic_split(parts[0], parts[1], parts[2]);
    }
    const Strategy s = parse_strategy(*ep_strategy);
    const GameStats st = pbr_game(o, s, c.trials, rng);
    Json j = header("game pbr-epistemic", c);
    merge(j, st.to_json());
    j["q"] = to_string(o.q());
    j["closed_form"] = to_string(pbr_closed_form(o.q(), s));
    finish(r, std::move(j), st.pass() && pbr_closed_form(o.q(), s) == pbr_tree(o, s).win);
  });

  auto players = std::make_shared<std::string>("quantum");
  auto* chsh = sub->add_subcommand("chsh", "CHSH nonlocal game");
  chsh->add_option("--players", *players, "classical | quantum")->check(CLI::IsMember({"classical", "quantum"}));
  chsh->callback([&c, &r, players] {
    RandomSource rng(c.seed, kGameStream);
    const GameStats st = chsh_game(*players == "classical" ? ChshPlayers::Classical : ChshPlayers::Quantum, c.trials, rng);
    Json j = header("game chsh", c);
    merge(j, st.to_json());
    j["classical_optimum"] = to_string(chsh_classical_optimum());
    finish(r, std::move(j), st.pass());
  });

  auto* tel = sub->add_subcommand("teleport", "Standard teleportation on random inputs");
  tel->callback([&c, &r] {
    RandomSource rng(c.seed, kGameStream);
    const std::size_t states = std::min<std::size_t>(c.trials, 10000);
    double worst_fid = 1.0, worst_mix = 0.0;
    std::array<std::size_t, 4> branches{};
    const Operator half = 0.5 * Operator::Identity(2, 2);
    for (std::size_t i = 0; i < states; ++i) {
      const TeleportResult t = teleport_standard(random_state(2, rng), rng);
      worst_fid = std::min(worst_fid, t.fidelity);
      worst_mix = std::max(worst_mix, (t.bob_premeasure_reduced.matrix() - half).cwiseAbs().maxCoeff());
      ++branches[static_cast<std::size_t>(2 * t.a + t.b)];
    }
    Json j = header("game teleport", c);
    j["states"] = states;
    j["min_fidelity"] = worst_fid;
    j["max_premessage_deviation"] = worst_mix;
    j["branch_counts"] = branches;
    finish(r, std::move(j), 1.0 - worst_fid <= c.tol && worst_mix <= c.tol);
  });

  auto* sd = sub->add_subcommand("superdense", "Superdense coding of every two-bit string");
  sd->callback([&c, &r] {
    RandomSource rng(c.seed, kGameStream);
    Json j = header("game superdense", c);
    Json rows = Json::array();
    bool ok = true;
    for (const std::string bits : {"00", "01", "10", "11"}) {
      const std::string out = superdense_roundtrip(bits, rng);
      rows.push_back(Json{{"sent", bits}, {"decoded", out}});
      ok = ok && out == bits;
    }
    j["rows"] = rows;
    finish(r, std::move(j), ok);
  });

  auto protocol = std::make_shared<std::string>("bb84");
  auto eve = std::make_shared<std::string>("none");
  auto bits = std::make_shared<std::size_t>(256);
  auto* qkd = sub->add_subcommand("qkd", "Key distribution with optional intercept-resend");
  qkd->add_option("--protocol", *protocol, "bb84 | e91")->check(CLI::IsMember({"bb84", "e91"}));
  qkd->add_option("--eve", *eve, "none | intercept")->check(CLI::IsMember({"none", "intercept"}));
  qkd->add_option("--bits", *bits, "Sifted key length")->check(CLI::PositiveNumber);
  qkd->callback([&c, &r, protocol, eve, bits] {
    RandomSource rng(c.seed, kGameStream);
    const QkdProtocol p = *protocol == "bb84" ? QkdProtocol::BB84 : QkdProtocol::E91;
    const Eavesdropper e = *eve == "none" ? Eavesdropper::None : Eavesdropper::InterceptResend;
    const QkdResult res = qkd_session(p, *bits, e, rng);
    Json j = header("game qkd", c);
    j["protocol"] = to_string(p);
    j["eavesdropper"] = to_string(e);
    merge(j, res.to_json());
    j["keys_equal"] = res.alice_key == res.bob_key;
    finish(r, std::move(j), e == Eavesdropper::None ? res.alice_key == res.bob_key : true);
  });
}

// ---------------------------------------------------------------- gleason

void add_gleason(CLI::App& app, const RunConfig& c, Report& r) {
  auto* sub = app.add_subcommand("gleason", "Density matrices from valuations");
  sub->require_subcommand(1);
  auto dim = std::make_shared<std::size_t>(3);
  auto samples = std::make_shared<std::size_t>(50);
  auto frames = std::make_shared<std::size_t>(10000);
  auto* rt = sub->add_subcommand("roundtrip", "Reconstruct random states and check the frame average");
  rt->add_option("--dim", *dim, "Hilbert-space dimension")->check(CLI::Range(2, 8));
  rt->add_option("--samples", *samples, "Random density matrices")->check(CLI::PositiveNumber);
  rt->add_option("--frames", *frames, "Haar frames for the average")->check(CLI::PositiveNumber);
  rt->callback([&c, &r, dim, samples, frames] {
    RandomSource rng(c.seed, kGleasonStream);
    double worst = 0.0;
    for (std::size_t s = 0; s < *samples; ++s) {
      const DensityOperator rho = random_density(*dim, rng);
      const Basis frame = haar_frame(*dim, rng);
      const GleasonResult g = gleason_reconstruct(Valuation::from_density(rho, frame), frame);
      worst = std::max(worst, (g.rho.matrix() - rho.matrix()).cwiseAbs().maxCoeff());
    }
    const DensityOperator rho = random_density(*dim, rng);
    const double avg_err = (frame_average_reconstruction(rho, *frames, rng) - rho.matrix()).cwiseAbs().maxCoeff();
    Json j = header("gleason roundtrip", c);
    j["dim"] = *dim;
    j["samples"] = *samples;
    j["valuation_size"] = 2 * *dim * *dim - *dim;
    j["max_reconstruction_error"] = worst;
    j["frames"] = *frames;
    j["frame_average_error"] = avg_err;
    finish(r, std::move(j), worst <= kTolRecon);
  });
}

// --------------------------------------------------------------------- lg

void add_lg(CLI::App& app, const RunConfig& c, Report& r) {
  auto* sub = app.add_subcommand("lg", "Temporal inequalities for a precessing qubit");
  sub->require_subcommand(1);
  auto omega = std::make_shared<double>(1.0);

  auto* k3 = sub->add_subcommand("k3", "Maximise K3 over the spacing tau");
  k3->add_option("--omega", *omega, "Precession rate")->check(CLI::PositiveNumber);
  k3->callback([&c, &r, omega] {
    PrecessionModel m;
    m.omega = *omega;
    const K3Max best = lg_k3_max(m);
    Json j = header("lg k3", c);
    j["omega"] = *omega;
    j["k3_max"] = best.k3_max;
    j["tau_star"] = best.tau_star;
    j["omega_tau_star"] = *omega * best.tau_star;
    j["classical_bound"] = 1.0;
    finish(r, std::move(j), std::abs(best.k3_max - 1.5) <= 1e-6);
  });

  auto t2 = std::make_shared<double>(1.0);
  auto* tc = sub->add_subcommand("temporal-chsh", "Optimise the temporal CHSH expression");
  tc->add_option("--omega", *omega, "Precession rate")->check(CLI::PositiveNumber);
  tc->add_option("--t2", *t2, "Second measurement time (first is 0)")->check(CLI::NonNegativeNumber);
  tc->callback([&c, &r, omega, t2] {
    RandomSource rng(c.seed, kLgStream);
    PrecessionModel m;
    m.omega = *omega;
    const TemporalChshOptimum best = temporal_chsh_optimize(m, 0.0, *t2, rng);
    Json j = header("lg temporal-chsh", c);
    j["omega"] = *omega;
    j["t2"] = *t2;
    j["value"] = best.value;
    j["tsirelson"] = 2.0 * std::numbers::sqrt2;
    finish(r, std::move(j), std::abs(best.value - 2.0 * std::numbers::sqrt2) <= 1e-3);
  });

  auto* ent = sub->add_subcommand("entropic", "Scan the entropic inequality over tau");
  ent->add_option("--omega", *omega, "Precession rate")->check(CLI::PositiveNumber);
  ent->callback([&c, &r, omega] {
    PrecessionModel m;
    m.omega = *omega;
    const EntropicScan s = entropic_lg_scan(m);
    const EntropicLgResult at = entropic_lg_check(m, 0.0, s.tau_star, 2.0 * s.tau_star);
    Json j = header("lg entropic", c);
    j["omega"] = *omega;
    j["violation_found"] = s.violation_found;
    j["max_margin_bits"] = s.best_margin;
    j["tau_star"] = s.tau_star;
    j["lhs"] = at.lhs;
    j["rhs"] = at.rhs;
    finish(r, std::move(j), true);
  });
}

// ---------------------------------------------------------------- render

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

void add_commands(CLI::App& app, const RunConfig& config, Report& report) {
  add_state(app, config, report);
  add_entangle(app, config, report);
  add_entropy(app, config, report);
  add_swap(app, config, report);
  add_chain(app, config, report);
  add_consensus(app, config, report);
  add_game(app, config, report);
  add_gleason(app, config, report);
  add_lg(app, config, report);
}

std::string render(const Json& body, Format format) {
  if (format == Format::Json) return body.dump(2) + "\n";
  std::ostringstream out;
  if (format == Format::Csv) {
    if (body.contains("rows") && body["rows"].is_array() && !body["rows"].empty()) {
      const Json& rows = body["rows"];
      bool first = true;
      for (auto& [key, value] : rows[0].items()) {
        (void)value;
        out << (first ? "" : ",") << csv_escape(key);
        first = false;
      }
      out << "\n";
      for (const auto& row : rows) {
        first = true;
        for (auto& [key, value] : row.items()) {
          (void)key;
          out << (first ? "" : ",") << csv_escape(scalar_text(value));
          first = false;
        }
        out << "\n";
      }
      return out.str();
    }
    out << "key,value\n";
    for (auto& [key, value] : body.items()) out << csv_escape(key) << "," << csv_escape(scalar_text(value)) << "\n";
    return out.str();
  }
  std::size_t width = 0;
  for (auto& [key, value] : body.items()) {
    (void)value;
    width = std::max(width, key.size());
  }
  for (auto& [key, value] : body.items()) {
    if (key == "rows" && value.is_array()) {
      out << key << ":\n";
      for (const auto& row : value) out << "  " << row.dump() << "\n";
      continue;
    }
    out << std::left << std::setw(static_cast<int>(width) + 2) << key << scalar_text(value) << "\n";
  }
  return out.str();
}

}  // namespace chronoq::cli
