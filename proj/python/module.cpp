#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "splitter/errors.hpp"
#include "splitter/existence.hpp"
#include "splitter/quasiperfect.hpp"
#include "splitter/set_factorization.hpp"
#include "splitter/splitter_core.hpp"

namespace py = pybind11;
using namespace splitter;

namespace {

GroupCtx make_ctx(u64 q, std::optional<u64> g) { return GroupCtx(q, g); }

ExistenceOptions make_options(u64 oracle_bound, bool allow_singular) {
  ExistenceOptions o;
  o.oracle_bound = oracle_bound;
  o.allow_singular = allow_singular;
  return o;
}

py::dict verdict_dict(const Verdict& v) {
  py::dict cert;
  for (const auto& e : v.certificate) {
    std::visit([&](const auto& x) { cert[py::str(e.name)] = x; }, e.value);
  }
  py::dict d;
  d["decision"] = to_string(v.decision);
  d["exists"] = v.decision == Decision::undecided ? py::object(py::none()) : py::bool_(v.exists());
  d["rule"] = v.rule;
  d["certificate"] = cert;
  return d;
}

py::dict quasi_dict(const QuasiVerdict& v) {
  py::dict w;
  for (const auto& [name, value] : v.witnesses) w[py::str(name)] = value;
  py::dict d;
  d["applicable"] = v.applicable;
  d["conclusion"] = to_string(v.conclusion);
  d["rule"] = v.rule;
  d["witnesses"] = w;
  return d;
}

}  // namespace

PYBIND11_MODULE(splitter, m) {
  m.doc() = "Perfect splitter sets B[-k1,k2](q): existence, construction and verification.";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<BoundExceeded>(m, "BoundExceeded", PyExc_RuntimeError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  m.def(
      "check_family",
      [](u64 q, unsigned k1, unsigned k2, std::optional<u64> g, u64 oracle_bound, bool allow_singular) {
        return verdict_dict(check_family(make_ctx(q, g), Interval(k1, k2), make_options(oracle_bound, allow_singular)));
      },
      py::arg("q"), py::arg("k1"), py::arg("k2"), py::arg("g") = py::none(), py::arg("oracle_bound") = 600,
      py::arg("allow_singular") = false, "Existence verdict with the rule used and its certificate.");

  m.def(
      "construct_perfect",
      [](u64 q, unsigned k1, unsigned k2, std::optional<u64> g, u64 oracle_bound) {
        const auto c = construct_perfect(make_ctx(q, g), Interval(k1, k2), make_options(oracle_bound, false));
        py::dict d;
        d["elements"] = c.set.elements;
        d["method"] = c.method;
        if (c.generator) {
          py::list chains;
          for (const auto& ch : c.generator->exponent_chains) chains.append(py::make_tuple(ch.step, ch.count));
          py::dict gen;
          gen["base"] = c.generator->base;
          gen["modulus"] = c.generator->modulus;
          gen["offset"] = c.generator->offset;
          gen["exponent_chains"] = chains;
          d["generator"] = gen;
        } else {
          d["generator"] = py::none();
        }
        return d;
      },
      py::arg("q"), py::arg("k1"), py::arg("k2"), py::arg("g") = py::none(), py::arg("oracle_bound") = 600,
      "An explicit perfect set; raises InvalidInput if none exists.");

  m.def(
      "verify",
      [](u64 modulus, unsigned k1, unsigned k2, const std::vector<u64>& elements) {
        return verify_splitter(modulus, Interval(k1, k2), elements);
      },
      py::arg("modulus"), py::arg("k1"), py::arg("k2"), py::arg("elements"));

  m.def(
      "classify",
      [](u64 modulus, unsigned k1, unsigned k2, const std::vector<u64>& elements) {
        const Classification c = classify(modulus, Interval(k1, k2), elements);
        py::dict d;
        d["kind"] = to_string(c.kind);
        d["singular"] = c.singular;
        return d;
      },
      py::arg("modulus"), py::arg("k1"), py::arg("k2"), py::arg("elements"));

  m.def(
      "reduce_to_factorization",
      [](u64 q, unsigned k1, unsigned k2, std::optional<u64> g) {
        return reduce_to_factorization(make_ctx(q, g), Interval(k1, k2));
      },
      py::arg("q"), py::arg("k1"), py::arg("k2"), py::arg("g") = py::none());

  m.def(
      "direct_factor_test",
      [](const std::vector<u64>& elements, u64 modulus, u64 p) {
        const DirectFactorResult r = direct_factor_test(elements, modulus, p);
        py::dict d;
        d["is_direct_factor"] = r.is_direct_factor;
        d["levels"] = r.levels;
        if (r.labeling) {
          d["complement"] = build_complement(*r.labeling, modulus).elements;
        } else {
          d["complement"] = py::none();
        }
        return d;
      },
      py::arg("elements"), py::arg("modulus"), py::arg("p"));

  m.def(
      "complement_exists_bruteforce",
      [](const std::vector<u64>& elements, u64 modulus) { return complement_exists_bruteforce(elements, modulus); },
      py::arg("elements"), py::arg("modulus"));

  m.def(
      "no_quasi_B0k_km", [](u64 k, u64 m) { return quasi_dict(no_quasi_B0k_km(k, m)); }, py::arg("k"), py::arg("m"));
  m.def(
      "lift_interval", [](u64 k, u64 m) { return quasi_dict(lift_interval(k, m)); }, py::arg("k"), py::arg("m"));
}
