#include "mwc/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "mwc/poly_text.hpp"
#include "mwc/random.hpp"

namespace mwc {

namespace {

struct Outcome {
  bool pass = true;
  json detail = json::object();

  void require(bool ok, const std::string& law, json counterexample = json::object()) {
    if (ok) return;
    pass = false;
    counterexample["law"] = law;
    detail["violations"].push_back(std::move(counterexample));
  }
};

class Recorder {
 public:
  void run(const std::string& id, const std::function<Outcome()>& body) {
    json entry = {{"id", id}};
    bool pass = false;
    try {
      Outcome o = body();
      pass = o.pass;
      entry.update(o.detail);
    } catch (const Error& e) {
      const std::string kind(to_string(e.kind()));
      std::string message = e.what();
      if (message.rfind(kind + ": ", 0) == 0) message.erase(0, kind.size() + 2);
      entry["error"] = kind;
      entry["message"] = message;
    } catch (const std::exception& e) {
      entry["error"] = "internal";
      entry["message"] = e.what();
    }
    entry["pass"] = pass;
    (pass ? passed_ : failed_)++;
    cases_.push_back(std::move(entry));
  }

  SuiteReport finish(const std::string& suite, json extra) {
    SuiteReport r;
    r.suite = suite;
    r.passed = passed_;
    r.failed = failed_;
    r.body = std::move(extra);
    r.body["suite"] = suite;
    r.body["cases"] = std::move(cases_);
    r.body["passed"] = passed_;
    r.body["failed"] = failed_;
    return r;
  }

 private:
  json cases_ = json::array();
  int passed_ = 0;
  int failed_ = 0;
};

std::uint64_t stream_seed(std::uint64_t seed, const std::string& suite) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : suite) h = (h ^ c) * 1099511628211ULL;
  return seed * 0x9E3779B97F4A7C15ULL ^ h;
}

int case_count(const Job& job, int fallback) { return job.cases >= 0 ? job.cases : fallback; }

int payload_int(const Job& job, const char* key, int fallback) {
  if (!job.payload.contains(key)) return fallback;
  const json& v = job.payload[key];
  if (!v.is_number_integer()) fail(ErrorKind::JobParseError, std::string(key) + " must be an integer");
  return v.get<int>();
}

json ghost_json(const GhostVec& g) {
  json out = json::array();
  for (const auto& c : g.comps) out.push_back(format_poly(c));
  return out;
}

// Random entries whose p^{n-1}-th powers stay small.
PolyShape witt_shape(std::int64_t p, std::size_t n) {
  if (p >= 5 && n >= 3) return {2, 1};
  if (p >= 5 || n >= 4) return {2, 2};
  return {3, 2};
}

WittVec random_witt(Rng& rng, const RingPtr& R, std::size_t n, int prec, const PolyShape& shape) {
  std::vector<LPoly> c;
  for (std::size_t i = 0; i < n; ++i) c.push_back(random_poly(rng, R, prec, shape));
  return WittVec(std::move(c));
}

RingPtr random_laurent_ring(Rng& rng, std::int64_t p, int prec, std::size_t k) {
  std::vector<std::string> names;
  std::vector<bool> inv;
  for (std::size_t j = 0; j < k; ++j) {
    names.push_back("x" + std::to_string(j + 1));
    inv.push_back(rng.coin());
  }
  return make_ring(PrimeCtx(p, prec), std::move(names), std::move(inv));
}

// --- witt-laws -------------------------------------------------------------

SuiteReport suite_witt_laws(const Job& job) {
  const std::int64_t p = job.p;
  const int N = job.N;
  const int n = payload_int(job, "n", 3);
  if (n < 1 || n > 6) fail(ErrorKind::JobParseError, "n must be in [1, 6]");
  const std::size_t len = static_cast<std::size_t>(n);
  Recorder rec;
  Rng rng(stream_seed(job.seed, "witt-laws"));
  auto R = make_ring(PrimeCtx(p, N), {"x"}, {true});

  rec.run("witt-laws/first-sum-polynomial", [&] {
    Outcome o;
    auto S = make_ring(PrimeCtx(p, N), {"X0", "X1", "Y0", "Y1"});
    // One extra digit so that the division by p keeps N digits.
    LPoly X0 = LPoly::variable(S, 0, N + 1), X1 = LPoly::variable(S, 1, N + 1);
    LPoly Y0 = LPoly::variable(S, 2, N + 1), Y1 = LPoly::variable(S, 3, N + 1);
    WittVec s = witt_add(WittVec({X0, X1}), WittVec({Y0, Y1}));
    LPoly expect = X1 + Y1 + (X0.pow(p) + Y0.pow(p) - (X0 + Y0).pow(p)).div_p_exact(1);
    o.require(s[1] == expect, "S1", {{"lhs", to_json(s[1])}, {"rhs", to_json(expect)}});
    return o;
  });

  rec.run("witt-laws/teichmuller-product", [&] {
    Outcome o;
    LPoly a = random_poly(rng, R, N, {2, 2}), b = random_poly(rng, R, N, {2, 2});
    WittVec lhs = witt_mul(WittVec::teichmuller(a, len), WittVec::teichmuller(b, len));
    o.require(lhs == WittVec::teichmuller(a * b, len), "[a][b] = [ab]", {{"a", to_json(a)}, {"b", to_json(b)}});
    return o;
  });

  const int count = case_count(job, 50);
  for (int i = 0; i < count; ++i) {
    rec.run("witt-laws/random/" + std::to_string(i), [&] {
      Outcome o;
      const PolyShape shape = witt_shape(p, len + 1);
      WittVec u = random_witt(rng, R, len, N, shape);
      WittVec v = random_witt(rng, R, len, N, shape);
      json cx = {{"u", to_json(u)}, {"v", to_json(v)}};
      GhostVec gu = ghost(u), gv = ghost(v);
      GhostVec gs = ghost(witt_add(u, v)), gm = ghost(witt_mul(u, v));
      bool add_ok = true, mul_ok = true;
      for (std::size_t m = 0; m < len; ++m) {
        add_ok = add_ok && gs[m] == gu[m] + gv[m];
        mul_ok = mul_ok && gm[m] == gu[m] * gv[m];
      }
      o.require(add_ok, "ghost(u+v) = ghost(u)+ghost(v)", cx);
      o.require(mul_ok, "ghost(uv) = ghost(u)ghost(v)", cx);
      o.require(ghost_invert(gu) == u, "ghost_invert(ghost(u)) = u", {{"u", to_json(u)}, {"ghost", ghost_json(gu)}});
      WittVec fv = frobenius(verschiebung(u, true));
      WittVec pu = witt_times(u, static_cast<unsigned>(p));
      o.require(fv == pu, "FV = p", {{"u", to_json(u)}, {"lhs", to_json(fv)}, {"rhs", to_json(pu)}});
      if (len >= 2) {
        std::vector<LPoly> head(u.comps().begin(), u.comps().end() - 1);
        WittVec lhs = witt_mul(verschiebung(u), v);
        WittVec rhs = verschiebung(witt_mul(WittVec(head), frobenius(v)), true);
        o.require(lhs == rhs, "V(u)w = V(u F(w))", {{"u", to_json(u)}, {"w", to_json(v)}});
      }
      o.detail["ledger"] = witt_add(u, v).ledger();
      return o;
    });
  }
  return rec.finish("witt-laws", {{"precision", {{"asserted", N}, {"working", N + n - 1}}}, {"n", n}});
}

// --- homotopy --------------------------------------------------------------

json chain_json(const ChainHomotopyResult& r) {
  return {{"H", to_json(r.h)}, {"difference", to_json(r.difference)}, {"dH_plus_Hd", to_json(r.dh_plus_hd)},
          {"prec", r.prec}, {"verified", r.verified}};
}

SuiteReport suite_homotopy(const Job& job) {
  const std::int64_t p = job.p;
  const int N = job.N;
  const int W = N + 1;
  Recorder rec;
  Rng rng(stream_seed(job.seed, "homotopy"));
  const bool explicit_job = job.payload.contains("psi1");

  rec.run("homotopy/fixture/dx", [&] {
    Outcome o;
    auto A = make_ring(PrimeCtx(p, W), {"x"});
    LPoly x = LPoly::variable(A, 0);
    RingMap psi1(A, A, {x.pow(p)});
    RingMap psi2(A, A, {x.pow(p) + x.scaled(p)});
    ChainHomotopyResult r = chain_homotopy(build_strong_homotopy(psi1, psi2), Form::differential(A, 0, W));
    o.require(r.verified, "psi2* - psi1* = dH + Hd", chain_json(r));
    o.require(r.h == Form::function(x.scaled(p)), "H(dx) = p x", chain_json(r));
    o.detail["H"] = to_json(r.h);
    return o;
  });

  if (explicit_job) {
    rec.run("homotopy/certificate", [&] {
      Outcome o;
      const json& pl = job.payload;
      RingPtr A = ring_from_json(PrimeCtx(p, W), pl.at("generators"), pl.value("invertible", json()));
      RingMap psi1(A, A, polys_from_json(pl.at("psi1"), A, W));
      RingMap psi2(A, A, polys_from_json(pl.at("psi2"), A, W));
      HomotopyCertificate cert = build_strong_homotopy(psi1, psi2);
      json phi = json::array();
      for (const auto& im : cert.phi.images()) phi.push_back(to_json(im));
      o.detail["phi"] = phi;
      o.detail["t_window"] = cert.t_window;
      o.detail["prec"] = cert.prec;
      json forms = json::array();
      for (const auto& fj : pl.value("forms", json::array())) {
        Form w = form_from_json(fj, A, W);
        ChainHomotopyResult r = chain_homotopy(cert, w);
        json entry = chain_json(r);
        entry["form"] = to_json(w);
        o.require(r.verified, "psi2* - psi1* = dH + Hd", entry);
        forms.push_back(std::move(entry));
      }
      o.detail["forms"] = std::move(forms);
      return o;
    });
  }

  const int count = case_count(job, explicit_job ? 0 : 50);
  for (int i = 0; i < count; ++i) {
    rec.run("homotopy/random/" + std::to_string(i), [&] {
      Outcome o;
      const std::size_t k = static_cast<std::size_t>(rng.uniform(1, 3));
      RingPtr A = random_laurent_ring(rng, p, W, k);
      const int q = static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(k)));
      TForm tw = random_tform(rng, A, q, W, static_cast<int>(rng.uniform(0, 6)), {3, 2});
      HomotopyIdentity id = check_homotopy_identity(tw);
      o.require(id.lhs == id.rhs, "h_p - h_0 = dL + Ld", {{"lhs", to_json(id.lhs)}, {"rhs", to_json(id.rhs)}});

      PolyShape shape{3, 2};
      RingMap psi1 = random_ring_map(rng, A, A, W, shape);
      RingMap psi2 = random_congruent_map(rng, psi1, shape);
      HomotopyCertificate cert = build_strong_homotopy(psi1, psi2);
      for (int d = 0; d <= static_cast<int>(k); ++d) {
        Form w = random_form(rng, A, d, W, {2, 2});
        ChainHomotopyResult r = chain_homotopy(cert, w);
        json entry = chain_json(r);
        entry["form"] = to_json(w);
        o.require(r.verified, "psi2* - psi1* = dH + Hd", entry);
      }
      o.detail["variables"] = k;
      o.detail["prec"] = cert.prec;
      return o;
    });
  }
  return rec.finish("homotopy", {{"precision", {{"asserted", N}, {"working", W}}}});
}

// --- comparison ------------------------------------------------------------

struct LiftSetup {
  RingPtr ring;
  FrobLift lift;
};

LiftSetup explicit_lift(const Job& job, int M) {
  const json& pl = job.payload;
  RingPtr A = ring_from_json(PrimeCtx(job.p, M), pl.value("generators", json::array({"x"})), pl.value("invertible", json()));
  if (pl.contains("lift")) return {A, FrobLift(RingMap(A, A, polys_from_json(pl["lift"], A, M)))};
  return {A, FrobLift::standard(A, M)};
}

SuiteReport suite_comparison(const Job& job) {
  const std::int64_t p = job.p;
  const int N = job.N;
  const int n = payload_int(job, "n", 3);
  if (n < 1 || n > 5) fail(ErrorKind::JobParseError, "n must be in [1, 5]");
  const std::size_t len = static_cast<std::size_t>(n);
  const int M = N + n - 1;
  Recorder rec;
  Rng rng(stream_seed(job.seed, "comparison"));
  const bool explicit_job = job.payload.contains("elements");
  auto A = make_ring(PrimeCtx(p, M), {"x"});
  LPoly x = LPoly::variable(A, 0);

  rec.run("comparison/teichmuller", [&] {
    Outcome o;
    WittVec s = s_f(ComparisonMap(FrobLift::standard(A, M), len, N), x);
    bool zeros = s[0] == x;
    for (std::size_t i = 1; i < len; ++i) zeros = zeros && s[i].is_zero();
    o.require(zeros, "s_f(x) = [x]", {{"s_f", to_json(s)}});
    o.detail["s_f"] = to_json(s);
    return o;
  });

  rec.run("comparison/perturbed-lift", [&] {
    Outcome o;
    ComparisonMap cm(FrobLift(RingMap(A, A, {x.pow(p) + x.scaled(p)})), 2, N);
    WittVec s = s_f(cm, x);
    o.require(s[0] == x && s[1] == x, "s_f(x) = (x, x)", {{"s_f", to_json(s)}});
    o.detail["s_f"] = to_json(s);
    return o;
  });

  rec.run("comparison/non-frobenius", [&] {
    Outcome o;
    RingMap bad(A, A, {x.pow(p) + x});
    std::string raised;
    try {
      s_f(ComparisonMap(FrobLift::unchecked(bad), std::max<std::size_t>(len, 2), N), x);
    } catch (const Error& e) {
      raised = std::string(to_string(e.kind()));
    }
    o.require(raised == "NotDivisible", "non-Frobenius map raises NotDivisible", {{"raised", raised}});
    o.detail["raised"] = raised;
    return o;
  });

  rec.run("comparison/induced-form-map", [&] {
    Outcome o;
    ComparisonMap cm(FrobLift::standard(A, M), len, N);
    RingPtr W = witt_coordinate_ring(A, len, N);
    Form image = induced_form_map(cm, Form::differential(A, 0, M));
    o.require(image == Form::differential(W, 0, N), "dx -> dx_0", {{"image", to_json(image)}});
    o.detail["image"] = to_json(image);
    return o;
  });

  if (explicit_job) {
    rec.run("comparison/elements", [&] {
      Outcome o;
      LiftSetup s = explicit_lift(job, M);
      ComparisonMap cm(s.lift, len, N);
      json out = json::array();
      for (const auto& a : polys_from_json(job.payload["elements"], s.ring, M)) {
        // Computed first: a throw inside a braced json initializer leaks under GCC 11.
        json sf = to_json(s_f(cm, a)), tf = to_json(t_f(cm, a));
        out.push_back({{"element", to_json(a)}, {"s_f", std::move(sf)}, {"t_f", std::move(tf)}});
      }
      o.detail["elements"] = std::move(out);
      return o;
    });
  }

  const int count = case_count(job, explicit_job ? 0 : 50);
  for (int i = 0; i < count; ++i) {
    rec.run("comparison/random/" + std::to_string(i), [&] {
      Outcome o;
      ComparisonMap cm(FrobLift(random_frobenius_map(rng, A, M, {2, 2})), len, N);
      const PolyShape shape = witt_shape(p, len + 1);
      LPoly a = random_poly(rng, A, M, shape), b = random_poly(rng, A, M, shape);
      WittVec ta = t_f(cm, a), tb = t_f(cm, b);
      json cx = {{"a", to_json(a)}, {"b", to_json(b)}, {"lift", to_json(cm.lift.map().image(0))}};
      o.require(t_f(cm, a + b) == witt_add(ta, tb), "t_f(a+b) = t_f(a)+t_f(b)", cx);
      o.require(t_f(cm, a * b) == witt_mul(ta, tb), "t_f(ab) = t_f(a)t_f(b)", cx);
      o.require(ta[0] == a.reduced(1), "slot 0 of t_f(a) = a mod p", cx);
      o.detail["ledger"] = ta.ledger();
      return o;
    });
  }
  return rec.finish("comparison", {{"precision", {{"asserted", N}, {"working", M}}}, {"n", n}});
}

// --- functoriality ---------------------------------------------------------

SuiteReport suite_functoriality(const Job& job) {
  const std::int64_t p = job.p;
  const int N = job.N;
  const int n = payload_int(job, "n", 3);
  if (n < 1 || n > 5) fail(ErrorKind::JobParseError, "n must be in [1, 5]");
  const std::size_t len = static_cast<std::size_t>(n);
  const int M = N + n - 1;
  Recorder rec;
  Rng rng(stream_seed(job.seed, "functoriality"));
  auto A = make_ring(PrimeCtx(p, M), {"x"});
  LPoly x = LPoly::variable(A, 0);
  LPoly one = LPoly::constant(A, 1, M);
  ComparisonMap cm(FrobLift::standard(A, M), len, N);
  std::vector<LPoly> fixture{x, x + one, x.pow(3)};

  auto square = [&](const RingMap& phi, const std::vector<LPoly>& elems, bool record) {
    Outcome o;
    json out = json::array();
    for (const auto& c : functoriality_check(cm, cm, phi, elems))
      out.push_back({{"element", to_json(c.element)}, {"value", to_json(c.lhs)}});
    if (record) o.detail["elements"] = std::move(out);
    return o;
  };

  rec.run("functoriality/identity", [&] { return square(RingMap::identity(A), fixture, true); });
  rec.run("functoriality/square-map", [&] { return square(RingMap(A, A, {x.pow(2)}), fixture, true); });
  rec.run("functoriality/incompatible", [&] {
    Outcome o;
    std::string raised;
    try {
      functoriality_check(cm, cm, RingMap(A, A, {x + one}), fixture);
    } catch (const Error& e) {
      raised = std::string(to_string(e.kind()));
    }
    o.require(raised == "IncompatibleLifts", "x -> x+1 is rejected", {{"raised", raised}});
    o.detail["raised"] = raised;
    return o;
  });

  const int count = case_count(job, 20);
  for (int i = 0; i < count; ++i) {
    rec.run("functoriality/random/" + std::to_string(i), [&] {
      const int k = static_cast<int>(rng.uniform(1, 3));
      std::vector<LPoly> elems;
      for (int e = 0; e < 3; ++e) elems.push_back(random_poly(rng, A, M, witt_shape(p, len + 1)));
      Outcome o = square(RingMap(A, A, {x.pow(static_cast<std::uint64_t>(k))}), elems, false);
      o.detail["power"] = k;
      return o;
    });
  }
  return rec.finish("functoriality", {{"precision", {{"asserted", N}, {"working", M}}}, {"n", n}});
}

// --- cohomology ------------------------------------------------------------

int vp(std::int64_t p, std::int64_t m) {
  int v = 0;
  for (m = m < 0 ? -m : m; m != 0 && m % p == 0; m /= p) ++v;
  return v;
}

SuiteReport suite_cohomology(const Job& job) {
  const std::int64_t p = job.p;
  const int N = job.N;
  const json& pl = job.payload;
  const std::string geometry = pl.value("geometry", pl.contains("variables") ? "custom" : "A1");
  RingPtr R;
  if (geometry == "A1")
    R = make_ring(PrimeCtx(p, N), {"T"});
  else if (geometry == "Gm")
    R = make_ring(PrimeCtx(p, N), {"x"}, {true});
  else if (geometry == "custom")
    R = ring_from_json(PrimeCtx(p, N), pl.at("variables"), pl.value("invertible_flags", json()));
  else
    fail(ErrorKind::JobParseError, "unknown geometry " + geometry);
  const int default_window = R->nvars() == 1 ? static_cast<int>(p * p * p) : static_cast<int>(p);
  const int window = payload_int(job, "window", default_window);
  if (window < 0) fail(ErrorKind::JobParseError, "window must be >= 0");
  double blocks = 1;
  for (std::size_t j = 0; j < R->nvars(); ++j) blocks *= R->invertible[j] ? 2.0 * window + 1 : window + 1.0;
  if (blocks > 2e5) fail(ErrorKind::JobParseError, "window too large");

  Recorder rec;
  GradedComplex cx(R, window);
  CohomReport report = cohomology(cx);
  json table = json::array();
  for (const auto& b : report.blocks) table.push_back(to_json(b, p));

  rec.run("cohomology/h0-constants", [&] {
    Outcome o;
    for (const auto& b : report.blocks) {
      if (b.degree != 0) continue;
      const bool origin = std::all_of(b.multidegree.begin(), b.multidegree.end(), [](int v) { return v == 0; });
      o.require(b.divisors == (origin ? std::vector<int>{N} : std::vector<int>{}), "H0 = constants", to_json(b, p));
    }
    return o;
  });

  rec.run("cohomology/divisor-range", [&] {
    Outcome o;
    for (const auto& b : report.blocks)
      for (int e : b.divisors) o.require(e >= 1 && e <= N, "exponents in [1, N]", to_json(b, p));
    return o;
  });

  if (geometry == "A1" || geometry == "Gm") {
    rec.run("cohomology/" + geometry + "-closed-form", [&] {
      Outcome o;
      json orders = json::array();
      for (const auto& b : report.blocks) {
        if (b.degree != 1) continue;
        const int m = b.multidegree[0];
        std::vector<int> expect;
        if (m == 0 && geometry == "Gm") expect = {N};
        if (m != 0 && vp(p, m) > 0) expect = {std::min(vp(p, m), N)};
        o.require(b.divisors == expect, "H1 block order p^min(v_p(m), N)", to_json(b, p));
        if (m > 0) orders.push_back(to_json(b, p)["order"]);
      }
      o.detail["h1_orders"] = std::move(orders);
      return o;
    });
  }

  json tests = pl.value("tests", json::array());
  if (!pl.contains("tests") && geometry == "A1")
    tests.push_back({{"degree", 1}, {"terms", {{{"indices", {0}}, {"coefficient", "T^" + std::to_string(p - 1)}}}}});
  for (std::size_t i = 0; i < tests.size(); ++i) {
    rec.run("cohomology/exactness/" + std::to_string(i), [&] {
      Outcome o;
      Form w = form_from_json(tests[i], R, N);
      ExactnessResult r = exactness_witness(cx, w);
      const std::int64_t pe = ipow(p, r.order_exponent) % ipow(p, N);
      const bool verified = d(r.primitive) == w.scaled(PrecScalar(R->ctx, pe, N));
      o.detail["form"] = to_json(w);
      o.detail["exact"] = r.exact;
      o.detail["order_exponent"] = r.order_exponent;
      o.detail["witness"] = to_json(r.primitive);
      o.detail["verified"] = verified;
      o.require(verified, "d(witness) = p^e form");
      return o;
    });
  }

  if (geometry == "A1" && pl.value("lift_independence", true)) {
    rec.run("cohomology/lift-independence", [&] {
      Outcome o;
      const int W = N + 1;
      auto B = make_ring(PrimeCtx(p, W), {"T"});
      LPoly T = LPoly::variable(B, 0);
      RingMap phi1(B, B, {T.pow(2)});
      RingMap phi2(B, B, {T.pow(2) + T.pow(3).scaled(p)});
      const int D = static_cast<int>(p * p);
      LiftIndependenceReport li = lift_independence_on_cohomology(phi1, phi2, GradedComplex(B, D), GradedComplex(B, 3 * D));
      int h1 = 0;
      for (const auto& c : li.cases) {
        if (c.degree == 1) ++h1;
        if (!(c.homotopy_verified && c.solve_verified))
          o.require(false, "pullback difference is exact",
                    {{"cocycle", to_json(c.cocycle)}, {"difference", to_json(c.difference)}, {"H", to_json(c.homotopy)}});
      }
      o.detail["classes"] = li.cases.size();
      o.detail["h1_classes"] = h1;
      o.detail["prec"] = li.prec;
      return o;
    });
  }

  json extra = {{"precision", {{"asserted", N}, {"working", N}}},
                {"geometry", geometry},
                {"variables", R->names},
                {"window", window},
                {"blocks", std::move(table)}};
  return rec.finish("cohomology", std::move(extra));
}

// --- overconvergence -------------------------------------------------------

json profile_json(const std::vector<ProfileEntry>& prof) {
  json out = json::array();
  for (const auto& e : prof)
    out.push_back({{"slot", e.slot}, {"degree", e.degree ? json(*e.degree) : json(nullptr)}, {"bound", e.bound}});
  return out;
}

SuiteReport suite_overconvergence(const Job& job) {
  const std::int64_t p = job.p;
  const int N = job.N;
  const int n = payload_int(job, "n", p <= 3 ? 4 : 3);
  if (n < 1 || n > 5) fail(ErrorKind::JobParseError, "n must be in [1, 5]");
  const std::size_t len = static_cast<std::size_t>(n);
  const int M = N + n - 1;
  Recorder rec;
  Rng rng(stream_seed(job.seed, "overconvergence"));
  const bool explicit_job = job.payload.contains("elements");
  auto A = make_ring(PrimeCtx(p, M), {"x"});
  LPoly x = LPoly::variable(A, 0);

  rec.run("overconvergence/standard-lift", [&] {
    Outcome o;
    auto prof = overconvergence_profile(ComparisonMap(FrobLift::standard(A, M), len, N), x.pow(2));
    bool shape = prof[0].degree == 2;
    for (std::size_t i = 1; i < prof.size(); ++i) shape = shape && !prof[i].degree;
    o.require(shape, "t_f(x^2) = [x^2]", {{"profile", profile_json(prof)}});
    o.detail["profile"] = profile_json(prof);
    return o;
  });

  if (explicit_job) {
    rec.run("overconvergence/elements", [&] {
      Outcome o;
      LiftSetup s = explicit_lift(job, M);
      ComparisonMap cm(s.lift, len, N);
      json out = json::array();
      for (const auto& a : polys_from_json(job.payload["elements"], s.ring, M)) {
        json profile = profile_json(overconvergence_profile(cm, a));
        out.push_back({{"element", to_json(a)}, {"profile", std::move(profile)}});
      }
      o.detail["elements"] = std::move(out);
      return o;
    });
  }

  const int count = case_count(job, explicit_job ? 0 : 30);
  const int max_deg = static_cast<int>(p <= 3 ? p * p : p);
  for (int i = 0; i < count; ++i) {
    rec.run("overconvergence/random/" + std::to_string(i), [&] {
      Outcome o;
      ComparisonMap cm(FrobLift(random_frobenius_map(rng, A, M, {2, static_cast<int>(p)})), len, N);
      LPoly a = random_nonzero_poly(rng, A, M, {2, max_deg});
      o.detail["element"] = to_json(a);
      o.detail["lift"] = to_json(cm.lift.map().image(0));
      o.detail["profile"] = profile_json(overconvergence_profile(cm, a));
      return o;
    });
  }
  return rec.finish("overconvergence", {{"precision", {{"asserted", N}, {"working", M}}}, {"n", n}});
}

using SuiteFn = SuiteReport (*)(const Job&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"witt-laws", suite_witt_laws},         {"homotopy", suite_homotopy},
      {"comparison", suite_comparison},       {"functoriality", suite_functoriality},
      {"cohomology", suite_cohomology},       {"overconvergence", suite_overconvergence}};
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [name, fn] : registry()) v.push_back(name);
    v.push_back("all");
    return v;
  }();
  return names;
}

json Job::normalized() const {
  json j = payload.is_object() ? payload : json::object();
  j["suite"] = suite;
  j["p"] = p;
  j["N"] = N;
  j["seed"] = seed;
  if (cases >= 0) j["cases"] = cases;
  return j;
}

Job parse_job(const json& j) {
  if (!j.is_object()) fail(ErrorKind::JobParseError, "job must be a JSON object");
  Job job;
  job.payload = j;
  try {
    if (!j.contains("suite") || !j["suite"].is_string()) fail(ErrorKind::JobParseError, "job needs a suite name");
    job.suite = j["suite"].get<std::string>();
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), job.suite) == names.end())
      fail(ErrorKind::JobParseError, "unknown suite '" + job.suite + "'");
    if (!j.contains("p") || !j["p"].is_number_integer()) fail(ErrorKind::JobParseError, "job needs an integer p");
    if (!j.contains("N") || !j["N"].is_number_integer()) fail(ErrorKind::JobParseError, "job needs an integer N");
    job.p = j["p"].get<std::int64_t>();
    job.N = j["N"].get<int>();
    if (job.p < 2 || job.p > 97 || !is_prime(job.p)) fail(ErrorKind::JobParseError, "p must be a prime below 100");
    if (job.N < 1 || job.N + 8 > max_precision(job.p)) fail(ErrorKind::JobParseError, "N out of range for this p");
    if (j.contains("seed")) {
      if (!j["seed"].is_number_integer() || (!j["seed"].is_number_unsigned() && j["seed"].get<std::int64_t>() < 0))
        fail(ErrorKind::JobParseError, "seed must be a nonnegative integer");
      job.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("cases")) {
      if (!j["cases"].is_number_integer() || j["cases"].get<std::int64_t>() < 0 || j["cases"].get<std::int64_t>() > 100000)
        fail(ErrorKind::JobParseError, "cases must be an integer in [0, 100000]");
      job.cases = j["cases"].get<int>();
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::JobParseError, e.what());
  }
  return job;
}

Job parse_job_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail(ErrorKind::JobParseError, std::string("invalid JSON: ") + e.what());
  }
  return parse_job(j);
}

int Report::passed() const {
  int s = 0;
  for (const auto& r : suites) s += r.passed;
  return s;
}

int Report::failed() const {
  int s = 0;
  for (const auto& r : suites) s += r.failed;
  return s;
}

Report run(const Job& job) {
  Report report{job, {}};
  for (const auto& [name, fn] : registry()) {
    if (job.suite != "all" && job.suite != name) continue;
    const auto start = std::chrono::steady_clock::now();
    SuiteReport r;
    try {
      r = fn(job);
    } catch (const json::exception& e) {
      fail(ErrorKind::JobParseError, e.what());
    }
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report.suites.push_back(std::move(r));
  }
  return report;
}

json report_body(const Report& r) {
  json suites = json::array();
  for (const auto& s : r.suites) suites.push_back(s.body);
  return {{"schema", kReportSchema},
          {"job", r.job.normalized()},
          {"suites", std::move(suites)},
          {"passed", r.passed()},
          {"failed", r.failed()},
          {"status", r.ok() ? "pass" : "fail"}};
}

json report_json(const Report& r, bool with_timing) {
  json j = report_body(r);
  if (with_timing) {
    json t = json::object();
    double total = 0;
    for (const auto& s : r.suites) {
      t[s.suite] = s.wall_ms;
      total += s.wall_ms;
    }
    j["timing_ms"] = {{"suites", t}, {"total", total}};
  }
  return j;
}

namespace {

std::string multidegree_text(const json& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i].get<int>());
  return s + ")";
}

void text_suite(std::ostringstream& out, const SuiteReport& s) {
  const json& b = s.body;
  out << "[" << s.suite << "]  passed " << s.passed << "  failed " << s.failed;
  if (b.contains("precision"))
    out << "  precision asserted " << b["precision"]["asserted"] << " working " << b["precision"]["working"];
  out << "\n";
  for (const auto& c : b["cases"]) {
    out << "  " << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << c["id"].get<std::string>();
    if (c.contains("exact"))
      out << "  exact=" << (c["exact"].get<bool>() ? "yes" : "no") << " order=p^" << c["order_exponent"]
          << " witness=" << c["witness"].dump();
    if (c.contains("error")) out << "  " << c["error"].get<std::string>() << ": " << c["message"].get<std::string>();
    if (c.contains("violations")) out << "\n        " << c["violations"].dump();
    out << "\n";
    for (const char* key : {"forms", "elements"})
      if (c.contains(key))
        for (const auto& e : c[key]) out << "        " << e.dump() << "\n";
  }
  if (b.contains("blocks")) {
    out << "  elementary divisors (exponents e of p^e)\n";
    out << "  H^q  multidegree       exponents        order\n";
    int top = 0;
    for (const auto& blk : b["blocks"]) top = std::max(top, blk["degree"].get<int>());
    for (int q = 0; q <= top; ++q) {
      for (const auto& blk : b["blocks"]) {
        // H^0 rows are listed only where nonzero.
        if (blk["degree"].get<int>() != q || (q == 0 && blk["exponents"].empty())) continue;
        std::string exps;
        for (const auto& e : blk["exponents"]) exps += (exps.empty() ? "" : ",") + std::to_string(e.get<int>());
        if (exps.empty()) exps = "-";
        std::string md = multidegree_text(blk["multidegree"]);
        out << "  " << q << "    " << md << std::string(md.size() < 18 ? 18 - md.size() : 1, ' ') << exps
            << std::string(exps.size() < 17 ? 17 - exps.size() : 1, ' ') << blk["order"].dump() << "\n";
      }
    }
  }
}

}  // namespace

std::string emit(const Report& r, Format format, bool with_timing) {
  if (format == Format::Json) return report_json(r, with_timing).dump(2) + "\n";
  std::ostringstream out;
  const json job = r.job.normalized();
  out << "mwcheck report (schema " << kReportSchema << ")\n";
  out << "job: suite=" << r.job.suite << " p=" << r.job.p << " N=" << r.job.N << " seed=" << r.job.seed << "\n";
  if (r.suites.empty()) out << "(no suites)\n";
  for (const auto& s : r.suites) {
    out << "\n";
    text_suite(out, s);
  }
  out << "\ntotal: passed " << r.passed() << "  failed " << r.failed() << "  status " << (r.ok() ? "PASS" : "FAIL")
      << "\n";
  if (with_timing) {
    double total = 0;
    for (const auto& s : r.suites) total += s.wall_ms;
    out << "wall time: " << total << " ms\n";
  }
  return out.str();
}

}  // namespace mwc
