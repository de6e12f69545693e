#include "wpb/cli.hpp"

#include "wpb/exhaustive.hpp"
#include "wpb/spec_io.hpp"
#include "wpb/synthesis.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace wpb::cli {

namespace {

struct Flags {
  std::string spec;
  std::string condition;
  std::string modality;
  std::string theorem;
  std::vector<std::size_t> sizes;
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  std::uint64_t max_enum = kDefaultEnumerationBound;
  std::string out;
};

int exit_code(const Verdict& v) {
  switch (v.status) {
    case Status::Healthy: return kExitHealthy;
    case Status::Unhealthy: return kExitUnhealthy;
    case Status::Inconclusive: return kExitInconclusive;
  }
  return kExitInternalError;
}

std::string default_modality(MonadKind k) {
  switch (k) {
    case MonadKind::Powerset: return "diamond";
    case MonadKind::NonemptyPowersetLift: return "dijkstra";
    case MonadKind::SubDist: return "total";
    case MonadKind::Dist: return "convex";
    case MonadKind::UpPowerset: return "game";
    case MonadKind::CvDist: return "demonic_prob";
  }
  return "diamond";
}

std::string instance_for_modality(const std::string& name) {
  static const std::map<std::string, std::string> table = {
      {"diamond", "may"},      {"box", "must"},           {"game", "game"},
      {"dijkstra", "dijkstra"}, {"total", "subdist_total"}, {"partial", "subdist_partial"},
      {"convex", "dist_convex"}, {"demonic_prob", "cv_sublinear"}};
  auto it = table.find(name);
  if (it == table.end()) throw InputError("no-synthesis", "modality '" + name + "' has no matching synthesis");
  return it->second;
}

class Session {
 public:
  Session(const Flags& flags, std::ostream& out, std::ostream& err) : flags_(flags), out_(out), err_(err) {}

  int wp() {
    const SpecDocument doc = load();
    if (!doc.computation) throw InputError("missing-computation", "wp needs a computation in the input document");
    const std::string name = modality_name(doc);
    const Modality tau = builtin_modality(name);
    check_monad(*doc.computation, tau);
    const PredicateTransformer phi = pt_modality(*doc.computation, tau);
    if (const auto* b = std::get_if<BoolTransformer>(&phi)) {
      emit(emit_truth_table(*b, doc.computation, name));
    } else {
      const auto& r = std::get<RationalTransformer>(phi);
      emit(emit_probe_table(r, grid_for(doc, r.source.size()), doc.computation, name));
    }
    return kExitHealthy;
  }

  int check() {
    if (flags_.condition.empty()) throw InputError("missing-flag", "check needs --condition NAME");
    const SpecDocument doc = load();
    const PredicateTransformer phi = transformer(doc);
    const std::size_t ny = std::visit([](const auto& t) { return t.source.size(); }, phi);
    std::optional<ProbeGrid> grid;
    if (carrier_of(phi) == TruthCarrier::RationalUnit) grid = grid_for(doc, ny);
    const Verdict v = check_condition(phi, flags_.condition, grid ? &*grid : nullptr);
    std::ostringstream o;
    o << "condition: " << flags_.condition << "\n" << "verdict: " << v.describe() << "\n";
    emit(o.str());
    return exit_code(v);
  }

  int synth() {
    const SpecDocument doc = load();
    const PredicateTransformer phi = transformer(doc);
    const std::string instance = instance_name(doc);
    std::optional<ProbeGrid> grid;
    if (carrier_of(phi) == TruthCarrier::RationalUnit)
      grid = grid_for(doc, std::get<RationalTransformer>(phi).source.size());
    SynthesisResult res;
    try {
      res = synthesize(phi, instance, grid ? &*grid : nullptr);
    } catch (const SynthesisError& e) {
      out_ << "instance: " << instance << "\nprecondition: " << e.verdict().describe() << "\n";
      return exit_code(e.verdict());
    }
    std::ostringstream summary;
    summary << "instance: " << instance << "\n";
    for (const auto& n : res.normalization) summary << "normalization: " << n << "\n";
    if (!res.halfspaces.empty()) {
      std::size_t total = 0;
      for (const auto& h : res.halfspaces) total += h.size();
      summary << "half-spaces: " << total << " over " << res.halfspaces.size() << " rows\n";
    }
    summary << "residual: " << res.residual.describe() << "\n";
    if (res.arrow) {
      const std::string name = instance_info(instance).modality;
      if (!flags_.out.empty()) {
        write_file(emit_computation(*res.arrow, name));
        out_ << summary.str();
      } else {
        out_ << emit_computation(*res.arrow, name);
        err_ << summary.str();
      }
    } else {
      out_ << summary.str();
    }
    return exit_code(res.residual);
  }

  int roundtrip() {
    const SpecDocument doc = load();
    if (!doc.computation) throw InputError("missing-computation", "roundtrip needs a computation in the input document");
    const std::string instance = instance_name(doc);
    std::optional<ProbeGrid> grid;
    if (doc.probes || flags_.seed || doc.seed) grid = grid_for(doc, doc.computation->target().size());
    const Verdict v = roundtrip_verify(*doc.computation, instance, grid ? &*grid : nullptr);
    emit("instance: " + instance + "\nverdict: " + v.describe() + "\n");
    return exit_code(v);
  }

  int laws() {
    const std::size_t a = flags_.sizes.empty() ? 2 : flags_.sizes[0];
    const std::size_t b = flags_.sizes.size() < 2 ? 3 : flags_.sizes[1];
    const std::uint64_t seed = flags_.seed.value_or(1);
    std::vector<FinSet> monad_carriers, map_carriers;
    for (std::size_t n = 0; n <= a; ++n) monad_carriers.push_back(FinSet::range("C" + std::to_string(n), n, "c"));
    for (std::size_t n = 0; n <= b; ++n) map_carriers.push_back(FinSet::range("C" + std::to_string(n), n, "c"));

    std::ostringstream o;
    std::vector<Verdict> all;
    auto line = [&](const std::string& suite, const Verdict& v) {
      o << std::left << std::setw(40) << suite << " " << to_string(v.status) << " (" << v.checked << " checked)\n";
      if (v.witness) o << v.witness->describe();
      all.push_back(v);
    };
    LawOptions lo;
    lo.seed = seed;
    lo.bound = flags_.max_enum;
    for (MonadKind k : kAllMonads)
      line("monad laws: " + std::string(to_string(k)), check_monad_laws(k, monad_carriers, lo));
    MonadMapLawOptions mo;
    mo.seed = seed;
    line("monad map laws: sigma", check_monad_map_laws(sigma_map(), map_carriers, mo));
    line("monad map laws: sigma'", check_monad_map_laws(sigma_prime_map(), map_carriers, mo));
    line("monad map laws: support", check_monad_map_laws(support_map(), monad_carriers, mo));
    AlgebraLawOptions ao;
    ao.seed = seed;
    if (!flags_.modality.empty()) {
      line("algebra laws: " + flags_.modality, check_algebra_laws(builtin_modality(flags_.modality), ao));
    } else {
      for (const char* m : {"diamond", "box", "total", "partial", "convex", "dijkstra", "game", "demonic_prob"})
        line(std::string("algebra laws: ") + m, check_algebra_laws(builtin_modality(m), ao));
    }
    const Verdict v = combine(all);
    o << "result: " << to_string(v.status) << "\n";
    emit(o.str());
    return exit_code(v);
  }

  int enum_verify() {
    if (flags_.theorem.empty()) throw InputError("missing-flag", "enum-verify needs --theorem ID");
    TheoremInstance in;
    in.id = flags_.theorem;
    if (!flags_.sizes.empty()) {
      in.nx = flags_.sizes[0];
      in.ny = flags_.sizes[1];
    }
    in.seed = flags_.seed.value_or(1);
    in.jobs = flags_.jobs;
    in.bound = flags_.max_enum;
    const SweepReport rep = wpb::enum_verify(in);
    emit(rep.text());
    err_ << "wall time: " << std::fixed << std::setprecision(3) << rep.seconds << " s\n";
    return rep.holds ? kExitHealthy : kExitUnhealthy;
  }

 private:
  SpecDocument load() const {
    if (flags_.spec.empty()) throw InputError("missing-flag", "this command needs --spec FILE");
    return load_spec(flags_.spec);
  }

  std::string modality_name(const SpecDocument& doc) const {
    if (!flags_.modality.empty()) return flags_.modality;
    if (doc.modality) return *doc.modality;
    if (doc.computation) return default_modality(doc.computation->monad());
    throw InputError("missing-modality", "no modality given and no computation to infer one from");
  }

  std::string instance_name(const SpecDocument& doc) const {
    if (!flags_.theorem.empty()) {
      instance_info(flags_.theorem);
      return flags_.theorem;
    }
    return instance_for_modality(modality_name(doc));
  }

  static void check_monad(const KleisliArrow& f, const Modality& tau) {
    if (f.monad() != tau.monad) {
      throw InputError("modality-mismatch", "modality " + tau.name + " interprets " +
                                                std::string(to_string(tau.monad)) + ", the computation uses " +
                                                std::string(to_string(f.monad())));
    }
  }

  PredicateTransformer transformer(const SpecDocument& doc) const {
    if (doc.transformer) return *doc.transformer;
    if (!doc.computation)
      throw InputError("missing-transformer", "the input document has neither a transformer nor a computation");
    const Modality tau = builtin_modality(modality_name(doc));
    check_monad(*doc.computation, tau);
    return pt_modality(*doc.computation, tau);
  }

  ProbeGrid grid_for(const SpecDocument& doc, std::size_t n) const {
    if (doc.probes) return *doc.probes;
    return ProbeGrid::standard(n, flags_.seed.value_or(doc.seed.value_or(0)));
  }

  void write_file(const std::string& text) const {
    std::ofstream f(flags_.out);
    if (!f) throw InputError("unwritable-file", "cannot write '" + flags_.out + "'");
    f << text;
  }

  void emit(const std::string& text) const {
    if (flags_.out.empty()) out_ << text;
    else write_file(text);
  }

  const Flags& flags_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weakest-precondition workbench: transformers, healthiness, synthesis"};
  app.name("wpbench");
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--spec", flags.spec, "JSON spec file");
  app.add_option("--condition", flags.condition, "healthiness condition name");
  app.add_option("--modality", flags.modality, "modality name, e.g. diamond or tau_r:1/3");
  app.add_option("--theorem", flags.theorem, "theorem instance id");
  app.add_option("--sizes", flags.sizes, "carrier sizes A B")->expected(2);
  app.add_option("--seed", flags.seed, "seed for sampling and probe grids");
  app.add_option("--jobs", flags.jobs, "worker threads for enumeration")->check(CLI::Range(1u, 64u));
  app.add_option("--max-enum", flags.max_enum, "enumeration size guard");
  app.add_option("--out", flags.out, "write the main output to FILE");

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"wp", "emit the transformer of a computation"},
      {"check", "decide a healthiness condition"},
      {"synth", "synthesize a computation from a transformer"},
      {"roundtrip", "verify both synthesis round-trips"},
      {"laws", "monad, monad-map and algebra law suites"},
      {"enum-verify", "theorem-level exhaustive or sampled sweep"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    std::ostringstream o;
    app.exit(e, o, o);
    out << o.str();
    return kExitHealthy;
  } catch (const CLI::ParseError& e) {
    err << "error[usage]: " << e.what() << "\n";
    return kExitInputError;
  }

  Session s(flags, out, err);
  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "wp") return s.wp();
    if (cmd == "check") return s.check();
    if (cmd == "synth") return s.synth();
    if (cmd == "roundtrip") return s.roundtrip();
    if (cmd == "laws") return s.laws();
    return s.enum_verify();
  } catch (const InputError& e) {
    err << "error[" << e.code() << "]: " << e.what() << "\n";
    return kExitInputError;
  } catch (const SizeGuardError& e) {
    err << "error[size-guard]: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error[invalid-input]: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace wpb::cli
