// sftdim: command-line front end for the sftdim library.

#include "sftdim/io.hpp"
#include "sftdim/sftdim.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <iterator>

using namespace sftdim;
using io::Json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kUndecided = 3, kViolation = 4 };

struct Globals {
  double tol = 1e-12;
  double boundary_tol = 1e-9;
  std::size_t jmax = 64;
  std::size_t entry_bound = 3;
  std::size_t kmax = 4;
  std::string format = "json";
};

Globals g;

std::string render_text(const Json& j) {
  std::string out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    out += it.key() + ": ";
    out += it->is_string() ? it->get<std::string>() : it->dump();
    out += '\n';
  }
  return out;
}

void emit(const Json& report) {
  if (g.format == "text") std::cout << render_text(report);
  else std::cout << report.dump(2) << '\n';
}

std::string read_matrix_source(const std::string& arg) {
  if (arg == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  if (std::filesystem::is_regular_file(arg)) return io::read_file(arg);
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return arg;
  throw Error(ErrorCode::parse, "cannot read matrix file " + arg);
}

IntMatrix load_matrix(const std::string& arg) {
  return io::parse_matrix(read_matrix_source(arg)).matrix;
}

PerronOptions perron_opts() {
  PerronOptions o;
  o.tol = g.tol;
  return perron_options_from_env(o);
}

AmbientPtr load_ambient(const std::string& arg) {
  return Ambient::make(validate(load_matrix(arg)), perron_opts());
}

Json header(const std::string& command, const IntMatrix& a) {
  Json j;
  j["command"] = command;
  j["version"] = io::kVersion;
  j["matrix_hash"] = io::matrix_hash(a);
  return j;
}

Flavor parse_flavor(const std::string& s) {
  if (s == "s") return Flavor::stable;
  if (s == "u") return Flavor::unstable;
  if (s == "h") return Flavor::homoclinic;
  if (s == "ch" || s == "k0") return Flavor::cylinder;
  throw Error(ErrorCode::flavor_mismatch, "unknown flavor '" + s + "' (use s, u, h, ch)");
}

// Visit with the element parsed in the requested flavor.
template <class Fn>
auto with_flavor(Flavor f, Fn&& fn) {
  switch (f) {
    case Flavor::stable: return fn(std::integral_constant<Flavor, Flavor::stable>{});
    case Flavor::unstable: return fn(std::integral_constant<Flavor, Flavor::unstable>{});
    case Flavor::homoclinic: return fn(std::integral_constant<Flavor, Flavor::homoclinic>{});
    case Flavor::cylinder: break;
  }
  return fn(std::integral_constant<Flavor, Flavor::cylinder>{});
}

template <Flavor F>
void add_trace(Json& j, const LimitElement<F>& e) {
  if (!e.ambient().primitive()) return;
  if constexpr (F == Flavor::stable) j["trace"] = trace_s(e);
  else if constexpr (F == Flavor::unstable) j["trace"] = trace_u(e);
  else if constexpr (F == Flavor::cylinder) j["trace"] = trace_ch(e);
}

Json lattice_json(const std::vector<IntMatrix>& basis) {
  Json j;
  j["rank"] = basis.size();
  j["basis"] = io::to_json(basis);
  return j;
}

// ---------------------------------------------------------------------------

int cmd_info(const std::string& path) {
  const IntMatrix m = load_matrix(path);
  const AdjacencyMatrix adj = validate(m);
  Json j = header("info", m);
  j["size"] = adj.size();
  const bool irreducible = is_irreducible(adj);
  j["irreducible"] = irreducible;
  j["characteristic_polynomial"] = characteristic_polynomial(m).to_string();
  const MinPolyData mp = minimal_polynomial(m);
  j["minimal_polynomial"] = mp.minimal.to_string();
  j["l"] = mp.l;
  j["p_A"] = mp.p.to_string();
  j["k"] = mp.k;
  if (!irreducible) {
    emit(j);
    return kOk;
  }
  j["period"] = period(adj);
  j["primitive"] = is_primitive(adj);
  if (is_primitive(adj)) j["perron"] = io::to_json(perron(adj, perron_opts()));
  j["centralizer_rank"] = centralizer_basis(m).rank();
  emit(j);
  return kOk;
}

int cmd_kgroups(const std::string& path) {
  auto amb = load_ambient(path);
  const IntMatrix& a = amb->matrix();
  const std::size_t k = amb->size();
  Json j = header("kgroups", a);
  const auto& c = amb->centralizer();
  const auto& b = amb->commutator();
  const QuotientStructure q = k1_group_structure(a);
  j["centralizer"] = lattice_json(c.basis);
  Json bj = lattice_json(b.basis);
  bj["witnesses"] = io::to_json(b.witnesses);
  j["commutator"] = std::move(bj);
  Json k1;
  k1["free_rank"] = q.free_rank;
  Json tors = Json::array();
  for (const auto& t : q.torsion) tors.push_back(io::to_json(t));
  k1["torsion"] = std::move(tors);
  if (auto s = amb->k1_stabilization()) k1["stabilization_index"] = *s;
  else k1["stabilization_index"] = nullptr;
  j["k1_level_group"] = std::move(k1);

  auto describe = [](std::size_t free, const std::vector<Integer>& torsion) {
    std::string s = free == 0 && torsion.empty() ? "0" : free == 1 ? "Z" : "Z^" + std::to_string(free);
    if (free == 0 && !torsion.empty()) s.clear();
    for (const auto& t : torsion) s += (s.empty() ? "" : " + ") + std::string("Z/") + t.str();
    return s;
  };
  Json levels;
  levels["K0(S)"] = describe(k, {}) + " rows, v -> vA";
  levels["K0(U)"] = describe(k, {}) + " columns, w -> Aw";
  levels["K0(H)"] = describe(k * k, {}) + ", X -> AXA";
  levels["K0(CH)"] = describe(c.rank(), {}) + " = C(A), X -> AXA";
  levels["K1(CH)"] = describe(q.free_rank, q.torsion) + " = M_K(Z)/B(A), X -> AXA";
  j["level_groups"] = std::move(levels);

  const CentralizerLattice center = center_basis(*amb);
  Json cj = lattice_json(center.basis);
  cj["label"] = "matrix-level center";
  j["center"] = std::move(cj);
  Json ra;
  ra["level0_rank"] = amb->k();
  if (auto idx = lattice_index(ra_level_lattice(*amb), center.basis)) ra["index_in_center"] = io::to_json(*idx);
  else ra["index_in_center"] = nullptr;
  j["R_A"] = std::move(ra);
  emit(j);
  return kOk;
}

int cmd_decompose(const std::string& path) {
  const IntMatrix m = load_matrix(path);
  const AdjacencyMatrix adj = validate(m);
  if (!is_irreducible(adj)) throw Error(ErrorCode::reducible, "decomposition needs an irreducible matrix");
  Json j = header("decompose", m);
  const SpectralDecomposition sd = spectral_decomposition(adj);
  j["period"] = sd.period;
  j["classes"] = sd.classes;
  j["vertex_order"] = sd.vertex_order;
  j["block_form"] = io::to_json(reorder(m, sd.vertex_order));
  j["component"] = io::to_json(sd.component.matrix());
  j["component_primitive"] = is_primitive(sd.component);
  if (is_primitive(sd.component)) {
    const double lc = perron(sd.component, perron_opts()).lambda;
    j["component_lambda"] = lc;
    const double la = spectral_radius(adj, perron_opts());
    j["lambda"] = la;
    j["lambda_power_period"] = std::pow(la, static_cast<double>(sd.period));
  }
  emit(j);
  return kOk;
}

int cmd_mul(const std::string& path, const std::string& grades, const std::string& x,
            const std::string& y) {
  auto amb = load_ambient(path);
  Json j = header("mul", amb->matrix());
  j["grades"] = grades;
  if (grades == "00") {
    const auto a = io::parse_element<Flavor::cylinder>(x, amb);
    const auto b = io::parse_element<Flavor::cylinder>(y, amb);
    const auto r = mul_00(a, b);
    j["result"] = io::to_json(r);
    j["normalized"] = io::to_json(normalize(r));
    j["equals_identity"] = k0_equal(r, k0_identity(amb));
    add_trace(j, r);
  } else if (grades == "01") {
    const auto r = mul_01(io::parse_element<Flavor::cylinder>(x, amb), io::parse_k1_element(y, amb));
    j["result"] = io::to_json(r);
  } else if (grades == "10") {
    const auto r = mul_10(io::parse_k1_element(x, amb), io::parse_element<Flavor::cylinder>(y, amb));
    j["result"] = io::to_json(r);
  } else if (grades == "11") {
    const auto r = mul_11(io::parse_k1_element(x, amb), io::parse_k1_element(y, amb));
    j["result"] = io::to_json(r);
  } else {
    throw Error(ErrorCode::flavor_mismatch, "grades must be 00, 01, 10 or 11");
  }
  emit(j);
  return kOk;
}

int cmd_act(const std::string& path, const std::string& side, const std::string& x,
            const std::string& y) {
  auto amb = load_ambient(path);
  Json j = header("act", amb->matrix());
  j["side"] = side;
  if (side == "s") {
    const auto r = act_s(io::parse_element<Flavor::stable>(x, amb),
                         io::parse_element<Flavor::cylinder>(y, amb));
    j["result"] = io::to_json(r);
    j["normalized"] = io::to_json(normalize(r));
    add_trace(j, r);
  } else if (side == "u") {
    const auto r = act_u(io::parse_element<Flavor::cylinder>(x, amb),
                         io::parse_element<Flavor::unstable>(y, amb));
    j["result"] = io::to_json(r);
    j["normalized"] = io::to_json(normalize(r));
    add_trace(j, r);
  } else {
    throw Error(ErrorCode::flavor_mismatch, "act side must be s or u");
  }
  emit(j);
  return kOk;
}

int cmd_trace(const std::string& path, const std::string& flavor, const std::string& x) {
  auto amb = load_ambient(path);
  amb->require_primitive("traces need a primitive matrix");
  Json j = header("trace", amb->matrix());
  const Flavor f = parse_flavor(flavor);
  if (f == Flavor::homoclinic) throw Error(ErrorCode::flavor_mismatch, "trace is defined for s, u and ch");
  with_flavor(f, [&](auto tag) {
    const auto e = io::parse_element<decltype(tag)::value>(x, amb);
    j["element"] = io::to_json(e);
    add_trace(j, e);
    return 0;
  });
  emit(j);
  return kOk;
}

int cmd_equal(const std::string& path, const std::string& flavor, const std::string& x,
              const std::string& y) {
  auto amb = load_ambient(path);
  Json j = header("equal", amb->matrix());
  j["flavor"] = flavor;
  if (flavor == "k1") {
    const auto r = k1_equal(io::parse_k1_element(x, amb), io::parse_k1_element(y, amb), g.jmax);
    j["verdict"] = to_string(r.verdict);
    j["exponent"] = r.exponent;
    emit(j);
    return r.verdict == K1Verdict::undecided ? kUndecided : kOk;
  }
  if (flavor == "hom") {
    j["equal"] = hom_equal(io::parse_hom(x, amb), io::parse_hom(y, amb));
    emit(j);
    return kOk;
  }
  j["equal"] = with_flavor(parse_flavor(flavor), [&](auto tag) {
    constexpr Flavor F = decltype(tag)::value;
    return equal(io::parse_element<F>(x, amb), io::parse_element<F>(y, amb));
  });
  emit(j);
  return kOk;
}

int cmd_alpha(const std::string& path, const std::string& flavor, const std::string& x, bool inverse) {
  auto amb = load_ambient(path);
  Json j = header(inverse ? "alpha-inverse" : "alpha", amb->matrix());
  with_flavor(parse_flavor(flavor), [&](auto tag) {
    constexpr Flavor F = decltype(tag)::value;
    const auto e = io::parse_element<F>(x, amb);
    const auto r = inverse ? alpha_inv(e) : alpha(e);
    j["result"] = io::to_json(r);
    j["normalized"] = io::to_json(normalize(r));
    add_trace(j, r);
    return 0;
  });
  emit(j);
  return kOk;
}

int cmd_normalize(const std::string& path, const std::string& flavor, const std::string& x) {
  auto amb = load_ambient(path);
  Json j = header("normalize", amb->matrix());
  with_flavor(parse_flavor(flavor), [&](auto tag) {
    constexpr Flavor F = decltype(tag)::value;
    const auto e = io::parse_element<F>(x, amb);
    j["element"] = io::to_json(e);
    j["normalized"] = io::to_json(normalize(e));
    j["is_zero"] = is_zero(e);
    return 0;
  });
  emit(j);
  return kOk;
}

int cmd_positive(const std::string& path, const std::string& x) {
  auto amb = load_ambient(path);
  Json j = header("positive", amb->matrix());
  PositivityOptions o;
  o.tol = g.boundary_tol;
  o.j_max = g.jmax;
  const auto r = is_positive(io::parse_element<Flavor::stable>(x, amb), o);
  j["verdict"] = to_string(r.verdict);
  j["pairing"] = r.pairing;
  j["steps"] = r.steps;
  emit(j);
  return r.verdict == Positivity::undecided ? kUndecided : kOk;
}

int cmd_ra(const std::string& path, const std::string& action, const std::vector<std::string>& args,
           std::size_t level) {
  auto amb = load_ambient(path);
  Json j = header("ra", amb->matrix());
  j["action"] = action;
  j["p_A"] = amb->minpoly().p.to_string();
  if (action == "reduce") {
    if (args.size() != 1) throw Error(ErrorCode::parse, "ra reduce takes one coefficient list");
    const Polynomial p = io::polynomial_from_json(io::detail::parse_json(io::resolve_argument(args[0])));
    const RAElement r = ra_reduce(amb, p, level);
    j["input"] = p.to_string();
    j["result"] = io::to_json(r);
    j["is_zero"] = r.polynomial().is_zero();
  } else if (action == "member") {
    if (args.size() != 1) throw Error(ErrorCode::parse, "ra member takes one element");
    const auto e = io::parse_element<Flavor::cylinder>(args[0], amb);
    j["element"] = io::to_json(e);
    const auto r = ra_membership(e);
    j["member"] = r.has_value();
    if (r) j["witness"] = io::to_json(*r);
    else j["witness"] = nullptr;
  } else if (action == "center") {
    const CentralizerLattice center = center_basis(*amb);
    Json cj = lattice_json(center.basis);
    cj["label"] = "matrix-level center";
    j["center"] = std::move(cj);
    j["centralizer_rank"] = amb->centralizer().rank();
    j["R_A_level0_rank"] = amb->k();
    if (auto idx = lattice_index(ra_level_lattice(*amb), center.basis)) j["R_A_index_in_center"] = io::to_json(*idx);
    else j["R_A_index_in_center"] = nullptr;
  } else {
    throw Error(ErrorCode::parse, "ra action must be reduce, member or center");
  }
  emit(j);
  return kOk;
}

int cmd_duality(const std::string& path, const std::string& action,
                const std::vector<std::string>& args) {
  auto amb = load_ambient(path);
  Json j = header("duality", amb->matrix());
  j["action"] = action;
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw Error(ErrorCode::parse, "duality " + action + " takes " + std::to_string(n) + " argument(s)");
  };
  if (action == "eval") {
    need(2);
    const auto phi = io::parse_hom(args[0], amb);
    const auto s = io::parse_element<Flavor::stable>(args[1], amb);
    j["hom"] = io::to_json(phi);
    j["element"] = io::to_json(s);
    j["result"] = io::to_json(hom_eval(phi, s));
  } else if (action == "to-unstable") {
    need(1);
    const auto phi = io::parse_hom(args[0], amb);
    j["hom"] = io::to_json(phi);
    j["result"] = io::to_json(hom_to_unstable(phi));
  } else if (action == "to-hom") {
    need(1);
    const auto u = io::parse_element<Flavor::unstable>(args[0], amb);
    j["element"] = io::to_json(u);
    j["result"] = io::to_json(unstable_to_hom(u));
  } else if (action == "equal") {
    need(2);
    j["equal"] = hom_equal(io::parse_hom(args[0], amb), io::parse_hom(args[1], amb));
  } else {
    throw Error(ErrorCode::parse, "duality action must be eval, to-unstable, to-hom or equal");
  }
  emit(j);
  return kOk;
}

int cmd_se_verify(const std::string& pa, const std::string& pb, const std::string& pw) {
  const IntMatrix a = load_matrix(pa), b = load_matrix(pb);
  const auto w = io::parse_witness(std::filesystem::is_regular_file(pw) ? "@" + pw : pw);
  Json j;
  j["command"] = "se-verify";
  j["version"] = io::kVersion;
  j["matrix_hash_A"] = io::matrix_hash(a);
  j["matrix_hash_B"] = io::matrix_hash(b);
  j["witness"] = io::to_json(w);
  const VerificationReport rep = verify(a, b, w);
  j["report"] = io::to_json(rep);
  emit(j);
  return rep.valid() ? kOk : kViolation;
}

int cmd_se_search(const std::string& pa, const std::string& pb) {
  const IntMatrix a = load_matrix(pa), b = load_matrix(pb);
  const AdjacencyMatrix aa = validate(a), bb = validate(b);
  SearchOptions o;
  o.k_max = g.kmax;
  o.entry_bound = g.entry_bound;
  const SearchResult r = search(aa, bb, o);
  Json j;
  j["command"] = "se-search";
  j["version"] = io::kVersion;
  j["matrix_hash_A"] = io::matrix_hash(a);
  j["matrix_hash_B"] = io::matrix_hash(b);
  j["k_max"] = r.k_max;
  j["entry_bound"] = r.entry_bound;
  j["R_candidates"] = r.r_candidates;
  j["S_candidates"] = r.s_candidates;
  Json ob;
  if (r.obstructions.lambda_a) ob["lambda_A"] = *r.obstructions.lambda_a;
  if (r.obstructions.lambda_b) ob["lambda_B"] = *r.obstructions.lambda_b;
  ob["lambda_mismatch"] = r.obstructions.lambda_mismatch;
  ob["nonzero_spectrum_A"] = r.obstructions.nonzero_spectrum_a.to_string();
  ob["nonzero_spectrum_B"] = r.obstructions.nonzero_spectrum_b.to_string();
  ob["spectrum_mismatch"] = r.obstructions.spectrum_mismatch;
  j["obstructions"] = std::move(ob);
  if (r.witness) {
    j["status"] = "found";
    j["witness"] = io::to_json(*r.witness);
  } else if (r.obstructions.any()) {
    j["status"] = "not shift equivalent";
  } else {
    j["status"] = "exhausted bounds";
  }
  emit(j);
  return r.witness || r.obstructions.any() ? kOk : kUndecided;
}

int report_error(const Error& e) {
  Json j;
  j["error"] = to_string(e.code());
  j["message"] = e.what();
  if (e.row()) j["row"] = *e.row();
  if (e.col()) j["col"] = *e.col();
  std::cerr << j.dump() << '\n';
  return kInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of shifts of finite type: dimension groups, the mapping-cylinder ring, "
               "traces, duality and shift equivalence."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", io::kVersion);
  app.add_option("--tol", g.tol, "Perron power-iteration tolerance")->capture_default_str();
  app.add_option("--boundary-tol", g.boundary_tol, "positivity: |v.u_r| below this is the boundary")
      ->capture_default_str();
  app.add_option("--jmax", g.jmax, "search bound for K1 equality and positivity")->capture_default_str();
  app.add_option("--entry-bound", g.entry_bound, "se-search: largest entry of R and S")->capture_default_str();
  app.add_option("--kmax", g.kmax, "se-search: largest lag")->capture_default_str();
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.footer("Environment: SFTDIM_MAX_ITERS caps power iteration (default 1000000).\n"
             "Exit codes: 0 ok, 1 usage, 2 invalid input, 3 undecided, 4 property violation.");

  std::string m1, m2, w, flavor, x, y, action, grades = "00";
  std::string arg1, arg2;
  // Separate strings: CLI11 would split a bracketed literal given to a vector option.
  auto rest = [&] {
    std::vector<std::string> v;
    for (const auto* a : {&arg1, &arg2})
      if (!a->empty()) v.push_back(*a);
    return v;
  };
  std::size_t level = 0;
  bool inverse = false;
  std::function<int()> run;

  auto* info = app.add_subcommand("info", "validation, period, minimal polynomial, Perron data");
  info->add_option("matrix", m1, "matrix file (JSON or whitespace rows), '-' for stdin, or inline JSON")->required();
  info->callback([&] { run = [&] { return cmd_info(m1); }; });

  auto* kg = app.add_subcommand("kgroups", "C(A), B(A), K1 structure and level groups");
  kg->add_option("matrix", m1)->required();
  kg->callback([&] { run = [&] { return cmd_kgroups(m1); }; });

  auto* dec = app.add_subcommand("decompose", "cyclic decomposition and mixing component");
  dec->add_option("matrix", m1)->required();
  dec->callback([&] { run = [&] { return cmd_decompose(m1); }; });

  auto* mul = app.add_subcommand("mul", "graded product on K0(CH) + K1(CH)");
  mul->add_option("matrix", m1)->required();
  mul->add_option("a", x, "left factor, e.g. '[\"A\",0]'")->required();
  mul->add_option("b", y, "right factor")->required();
  mul->add_option("--grades", grades, "degrees of the factors: 00, 01, 10 or 11")->capture_default_str();
  mul->callback([&] { run = [&] { return cmd_mul(m1, grades, x, y); }; });

  auto* act = app.add_subcommand("act", "module actions: s [v,N]*[X,M], u [X,M]*[w,N]");
  act->add_option("matrix", m1)->required();
  act->add_option("side", flavor)->required()->check(CLI::IsMember({"s", "u"}));
  act->add_option("a", x)->required();
  act->add_option("b", y)->required();
  act->callback([&] { run = [&] { return cmd_act(m1, flavor, x, y); }; });

  auto* tr = app.add_subcommand("trace", "trace of an element (s, u or ch)");
  tr->add_option("matrix", m1)->required();
  tr->add_option("flavor", flavor)->required();
  tr->add_option("element", x)->required();
  tr->callback([&] { run = [&] { return cmd_trace(m1, flavor, x); }; });

  auto* eq = app.add_subcommand("equal", "equality of classes (s, u, h, ch, k1, hom)");
  eq->add_option("matrix", m1)->required();
  eq->add_option("flavor", flavor)->required();
  eq->add_option("a", x)->required();
  eq->add_option("b", y)->required();
  eq->callback([&] { run = [&] { return cmd_equal(m1, flavor, x, y); }; });

  auto* al = app.add_subcommand("alpha", "shift automorphism on an element");
  al->add_option("matrix", m1)->required();
  al->add_option("flavor", flavor)->required();
  al->add_option("element", x)->required();
  al->add_flag("--inverse", inverse);
  al->callback([&] { run = [&] { return cmd_alpha(m1, flavor, x, inverse); }; });

  auto* nm = app.add_subcommand("normalize", "display form of an element");
  nm->add_option("matrix", m1)->required();
  nm->add_option("flavor", flavor)->required();
  nm->add_option("element", x)->required();
  nm->callback([&] { run = [&] { return cmd_normalize(m1, flavor, x); }; });

  auto* pos = app.add_subcommand("positive", "positivity of a class in K0(S)");
  pos->add_option("matrix", m1)->required();
  pos->add_option("element", x)->required();
  pos->callback([&] { run = [&] { return cmd_positive(m1, x); }; });

  auto* ra = app.add_subcommand("ra", "R_A: reduce COEFFS | member ELEMENT | center");
  ra->add_option("matrix", m1)->required();
  ra->add_option("action", action)->required()->check(CLI::IsMember({"reduce", "member", "center"}));
  ra->add_option("arg1", arg1);
  ra->add_option("arg2", arg2);
  ra->add_option("--level", level, "level for reduce")->capture_default_str();
  ra->callback([&] { run = [&] { return cmd_ra(m1, action, rest(), level); }; });

  auto* du = app.add_subcommand("duality", "eval HOM ELEMENT | to-unstable HOM | to-hom ELEMENT | equal HOM HOM");
  du->add_option("matrix", m1)->required();
  du->add_option("action", action)->required()->check(CLI::IsMember({"eval", "to-unstable", "to-hom", "equal"}));
  du->add_option("arg1", arg1);
  du->add_option("arg2", arg2);
  du->callback([&] { run = [&] { return cmd_duality(m1, action, rest()); }; });

  auto* sv = app.add_subcommand("se-verify", "check a shift-equivalence witness {R, S, k}");
  sv->add_option("A", m1)->required();
  sv->add_option("B", m2)->required();
  sv->add_option("witness", w, "witness file or inline JSON")->required();
  sv->callback([&] { run = [&] { return cmd_se_verify(m1, m2, w); }; });

  auto* ss = app.add_subcommand("se-search", "bounded search for a shift-equivalence witness");
  ss->add_option("A", m1)->required();
  ss->add_option("B", m2)->required();
  ss->callback([&] { run = [&] { return cmd_se_search(m1, m2); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return run();
  } catch (const Error& e) {
    return report_error(e);
  } catch (const nlohmann::json::exception& e) {
    return report_error(Error(ErrorCode::parse, e.what()));
  }
}
