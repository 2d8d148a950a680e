#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace gradecalc::cli {

namespace {

// Writes to `path`, or stdout when it is empty or "-".
template <class F>
void emit(const std::string& path, F&& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p);
  if (!os) throw ConfigError("cannot write " + path);
  body(os);
}

double parse_p(const std::string& p) {
  if (p == "inf" || p == "infinity") return INFINITY;
  std::size_t pos = 0;
  const double v = std::stod(p, &pos);
  if (pos != p.size() || !(v >= 1)) throw ConfigError("--p must be a number >= 1 or inf");
  return v;
}

int finish(const VerificationReport& rep, const Options& o) {
  if (!o.out.empty()) rep.write(o.out);
  std::cout << rep.to_text();
  return rep.all_pass() ? kExitOk : kExitChecksFailed;
}

std::vector<GridFunction> heat_family(Workspace& ws, const std::vector<double>& times) {
  for (double t : times)
    if (!(t > 0)) throw ConfigError("heat times must be positive");
  return heat_kernel_family(ws.plan(), times).kernels;
}

std::vector<GridFunction> potential_family(Workspace& ws, const std::string& type, double a) {
  if (type == "riesz") return {riesz_kernel(ws.plan(), a).values};
  if (type == "bessel") return {bessel_kernel(ws.plan(), a).values};
  throw ConfigError("--type must be riesz or bessel");
}

}  // namespace

int cmd_group_check(const Options& o) { return finish(run_group_check(o.run), o); }

int cmd_heat(const Options& o) {
  auto ws = prepare_workspace(o.run);
  const auto fam = heat_family(ws, o.times);
  emit(o.out, [&](std::ostream& os) { write_csv_family(os, fam, o.times, "t"); });
  return kExitOk;
}

int cmd_kernel(const Options& o) {
  auto ws = prepare_workspace(o.run);
  const auto fam = potential_family(ws, o.kernel_type, o.a);
  emit(o.out, [&](std::ostream& os) { write_csv_family(os, fam, {o.a}, "a"); });
  return kExitOk;
}

int cmd_norm(const Options& o) {
  auto ws = prepare_workspace(o.run);
  SobolevNormSpec spec;
  spec.plan = ws.plan_ptr();
  spec.s = o.s;
  spec.p = parse_p(o.p);
  spec.flavor = parse_flavor(o.flavor);
  spec.fields = ws.fields;
  spec.fd_order = ws.profile.order;
  spec.margin = 2;
  FamilyOptions fo = ws.profile.family;
  fo.seed = o.run.seed;
  const auto fam = bump_family(ws.grid, ws.alg->weights(), ws.profile.family_scale, fo);
  emit(o.out, [&](std::ostream& os) {
    os << "member,lp_norm,sobolev_norm\n";
    char buf[96];
    for (std::size_t i = 0; i < fam.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", i, lp_norm(fam[i], spec.p, interior_mask(ws.grid, spec.margin)),
                    sobolev_norm(spec, fam[i]));
      os << buf;
    }
  });
  return kExitOk;
}

int cmd_probe(const Options& o) {
  RunConfig cfg = o.run;
  const auto rep = o.group_given ? run_verify(cfg) : run_default_suite(cfg);
  VerificationReport view;
  bool ok = !rep.partial;
  for (const auto& p : rep.probes)
    if (o.probe_filter.empty() || p.id.find(o.probe_filter) != std::string::npos) {
      view.probes.push_back(p);
      ok = ok && p.pass;
    }
  if (!o.probe_filter.empty() && view.probes.empty()) throw ConfigError("no probe matches '" + o.probe_filter + "'");
  emit(o.out, [&](std::ostream& os) { os << view.probes_csv(); });
  return ok ? kExitOk : kExitChecksFailed;
}

int cmd_verify(const Options& o) { return finish(o.group_given ? run_verify(o.run) : run_default_suite(o.run), o); }

int cmd_export(const Options& o) {
  const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
  if (o.artifact == "probes") {
    const auto rep = o.group_given ? run_verify(o.run) : run_default_suite(o.run);
    emit((dir / "probes.csv").string(), [&](std::ostream& os) { os << rep.probes_csv(); });
    return rep.all_pass() ? kExitOk : kExitChecksFailed;
  }
  auto ws = prepare_workspace(o.run);
  if (o.artifact == "heat") {
    const auto fam = heat_family(ws, o.times);
    emit((dir / "h.csv").string(), [&](std::ostream& os) { write_csv_family(os, fam, o.times, "t"); });
  } else if (o.artifact == "riesz" || o.artifact == "bessel") {
    const auto fam = potential_family(ws, o.artifact, o.a);
    emit((dir / (o.artifact + ".csv")).string(), [&](std::ostream& os) { write_csv_family(os, fam, {o.a}, "a"); });
  } else {
    throw ConfigError("unknown artifact '" + o.artifact + "'");
  }
  return kExitOk;
}

}  // namespace gradecalc::cli
