#include "wpb/exhaustive.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <sstream>
#include <thread>

namespace wpb {

namespace {

using Finder = std::optional<BoolLawViolation> (*)(const BoolTransformer&);

Finder finder_for(StructureClass c) {
  switch (c) {
    case StructureClass::JoinLattice: return &find_join_violation;
    case StructureClass::MeetLattice: return &find_meet_violation;
    case StructureClass::Poset: return &find_monotone_violation;
    case StructureClass::StrictMeetSemilattice: return &find_strict_meets_violation;
    default: throw std::invalid_argument("not a Boolean class");
  }
}

struct Slice {
  std::uint64_t healthy = 0;
  std::vector<std::uint64_t> healthy_indices;
  std::optional<std::uint64_t> bad;  // first healthy index whose synthesis fails
};

// S1 side over [begin, end): every healthy transformer must synthesize to an
// arrow that re-evaluates exactly.
Slice scan_healthy(const InstanceInfo& info, const TransformerStream& stream, std::uint64_t begin, std::uint64_t end,
                   bool keep) {
  Slice s;
  const Finder find = finder_for(info.cls);
  BoolTransformer phi{stream.source(), stream.target(), {}};
  const bool relational = info.monad == MonadKind::Powerset;
  const bool diamond = info.id == "may";
  const std::size_t nx = stream.target().size(), ny = stream.source().size();
  std::vector<Mask> back;
  stream.for_each(begin, end, [&](std::uint64_t index, const std::vector<Mask>& table) {
    phi.table = table;
    if (find(phi)) return true;
    ++s.healthy;
    if (keep) s.healthy_indices.push_back(index);
    bool ok;
    if (relational) {
      const auto rows = diamond ? relation_rows_diamond(table, nx, ny) : relation_rows_box(table, nx, ny);
      if (diamond) wp_diamond_table(rows, ny, back);
      else wp_box_table(rows, ny, back);
      ok = back == table;
    } else {
      try {
        const SynthesisResult r = synthesize(phi, info.id, nullptr);
        ok = r.arrow && r.residual.healthy();
      } catch (const SynthesisError&) {
        ok = false;
      }
    }
    if (!ok) {
      s.bad = index;
      return false;
    }
    return true;
  });
  return s;
}

Verdict synthesis_failure(const InstanceInfo& info, const TransformerStream& stream, std::uint64_t index) {
  std::vector<Mask> table;
  stream.decode(index, table);
  BoolTransformer phi{stream.source(), stream.target(), table};
  const std::string id = info.id;
  auto recheck = [phi, id] {
    try {
      const SynthesisResult r = synthesize(phi, id, nullptr);
      return !(r.arrow && r.residual.healthy());
    } catch (const SynthesisError&) {
      return false;  // the transformer is not healthy after all
    }
  };
  std::string table_text;
  for (std::size_t k = 0; k < table.size(); ++k)
    table_text += (k ? " " : "") + bitstring(k, phi.source.size()) + ":" + bitstring(table[k], phi.target.size());
  return Verdict::fail(Witness{"healthy transformer is realizable: pt(synth(phi)) = phi",
                               {"index = " + std::to_string(index), "phi = " + table_text}, "no realizing computation",
                               "pt(f) = phi for some f", recheck},
                       index + 1);
}

SweepReport boolean_sweep(const TheoremInstance& in, const InstanceInfo& info) {
  SweepReport rep;
  rep.id = info.id;
  rep.nx = in.nx;
  rep.ny = in.ny;
  rep.exhaustive = true;
  const FinSet x = FinSet::range("X", in.nx, "x");
  const FinSet y = FinSet::range("Y", in.ny, "y");
  const TransformerStream stream(y, x, in.bound);
  rep.transformers = stream.count();
  rep.materialized = in.nx <= 2 && in.ny <= 2;

  // S1: partitioned by index range, merged in index order.
  const unsigned jobs = std::max(1u, std::min<unsigned>(in.jobs, 64));
  std::vector<Slice> slices(jobs);
  const std::uint64_t step = (stream.count() + jobs - 1) / jobs;
  auto run = [&](unsigned j) {
    const std::uint64_t b = std::min<std::uint64_t>(stream.count(), j * step);
    const std::uint64_t e = std::min<std::uint64_t>(stream.count(), b + step);
    slices[j] = scan_healthy(info, stream, b, e, rep.materialized);
  };
  if (jobs == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(run, j);
    for (auto& t : threads) t.join();
  }
  std::set<std::uint64_t> s1;
  for (const auto& s : slices) {
    rep.healthy += s.healthy;
    s1.insert(s.healthy_indices.begin(), s.healthy_indices.end());
    if (s.bad && !rep.discrepancy) rep.discrepancy = synthesis_failure(info, stream, *s.bad);
  }

  // S2: every computation's transformer is healthy.
  const Modality tau = builtin_modality(info.modality);
  const Finder find = finder_for(info.cls);
  std::set<std::uint64_t> s2;
  for_each_arrow(info.monad, x, y, [&](const KleisliArrow& f) {
    ++rep.computations;
    const BoolTransformer phi = std::get<BoolTransformer>(pt_modality(f, tau));
    s2.insert(stream.encode(phi.table));
    if (find(phi) && !rep.discrepancy) {
      Verdict v = check_structure(phi, info.cls);
      v.witness->law = "pt(f) is healthy: " + v.witness->law;
      v.witness->arguments.insert(v.witness->arguments.begin(), "f = " + describe(f));
      rep.discrepancy = v;
    }
    return true;
  }, in.bound);
  rep.realizable = s2.size();

  if (!rep.discrepancy && rep.materialized && s1 != s2) {
    std::vector<std::uint64_t> diff;
    std::set_symmetric_difference(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(diff));
    const std::uint64_t index = diff.front();
    const bool missing_in_s2 = s1.count(index) > 0;
    auto recheck = [s1, s2, index, missing_in_s2] {
      return missing_in_s2 ? (s1.count(index) && !s2.count(index)) : (s2.count(index) && !s1.count(index));
    };
    rep.discrepancy = Verdict::fail(Witness{"S1 = S2", {"transformer index = " + std::to_string(index)},
                                            missing_in_s2 ? "in S1" : "in S2",
                                            missing_in_s2 ? "not in S2" : "not in S1", recheck},
                                    rep.transformers);
  }
  if (!rep.discrepancy && rep.healthy != rep.realizable) {
    const auto h = rep.healthy, r = rep.realizable;
    rep.discrepancy = Verdict::fail(Witness{"|S1| = |S2|", {}, std::to_string(h), std::to_string(r),
                                            [h, r] { return h != r; }},
                                    rep.transformers);
  }
  rep.holds = !rep.discrepancy;
  return rep;
}

SweepReport rational_sweep(const TheoremInstance& in, const InstanceInfo& info) {
  SweepReport rep;
  rep.id = info.id;
  rep.nx = in.nx;
  rep.ny = in.ny;
  const FinSet x = FinSet::range("X", in.nx, "x");
  const FinSet y = FinSet::range("Y", in.ny, "y");
  const ProbeGrid grid = ProbeGrid::standard(in.ny);
  Sampler sampler(in.seed);
  // Arrows are drawn up front so the sample does not depend on the number of
  // workers; the report stops at the lowest failing index.
  std::vector<KleisliArrow> arrows;
  arrows.reserve(in.samples);
  for (std::size_t i = 0; i < in.samples; ++i) arrows.push_back(random_arrow(info.monad, x, y, sampler));
  std::vector<std::optional<Verdict>> results(arrows.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < arrows.size(); i = next++)
      results[i] = roundtrip_verify(arrows[i], info.id, &grid);
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(in.jobs, 64));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    Verdict& rt = *results[i];
    ++rep.computations;
    // The synthesis precondition is the healthiness check, so a failure
    // there surfaces as a "pt(f) is healthy" witness.
    const bool unhealthy = rt.witness && rt.witness->law.rfind("pt(f) is healthy", 0) == 0;
    if (!unhealthy) ++rep.healthy;
    if (!rt.healthy()) {
      if (rt.witness) rt.witness->arguments.insert(rt.witness->arguments.begin(), "f = " + describe(arrows[i]));
      rep.discrepancy = rt;
      break;
    }
    ++rep.realizable;
  }
  rep.holds = !rep.discrepancy;
  return rep;
}

}  // namespace

std::string SweepReport::text() const {
  std::ostringstream o;
  o << "theorem: " << id << "\n";
  o << "sizes: |X| = " << nx << ", |Y| = " << ny << "\n";
  if (exhaustive) {
    o << "mode: exhaustive" << (materialized ? " (set equality)" : " (streaming double inclusion)") << "\n";
    o << "transformers: " << transformers << "\n";
    o << "healthy (S1): " << healthy << "\n";
    o << "computations: " << computations << "\n";
    o << "distinct transformers of computations (S2): " << realizable << "\n";
    if (holds) o << transformers << " transformers, equality holds\n";
  } else {
    o << "mode: sampled\n";
    o << "computations: " << computations << "\n";
    o << "healthy transformers of computations (S2 in S1): " << healthy << "\n";
    o << "exact round-trips (synth(pt f) = f): " << realizable << "\n";
    if (holds) o << computations << " computations, inclusion and round-trip hold\n";
  }
  if (discrepancy) o << "discrepancy:\n" << discrepancy->describe() << "\n";
  o << "result: " << (holds ? "PASS" : "FAIL") << "\n";
  return o.str();
}

SweepReport enum_verify(const TheoremInstance& instance) {
  const auto start = std::chrono::steady_clock::now();
  const InstanceInfo info = instance_info(instance.id);
  SweepReport rep = is_boolean_class(info.cls) ? boolean_sweep(instance, info) : rational_sweep(instance, info);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace wpb
