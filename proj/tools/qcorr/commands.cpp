#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <variant>

#include <nlohmann/json.hpp>

#include "qcorr/catalog.hpp"
#include "qcorr/entropy.hpp"
#include "qcorr/io.hpp"
#include "qcorr/keyrates.hpp"
#include "qcorr/monogamy.hpp"
#include "qcorr/report_io.hpp"
#include "qcorr/squashed.hpp"
#include "qcorr/variational.hpp"

namespace qcorr::cli {

namespace {

using json = nlohmann::json;

Budget make_budget(const RunConfig& cfg) {
  Budget b;
  b.evaluations = cfg.budget;
  b.restarts = std::max(1, std::min(cfg.restarts, cfg.budget));
  b.seed = cfg.seeds.empty() ? 1 : cfg.seeds.front();
  return b;
}

json budget_json(const Budget& b) {
  return {{"evaluations", b.evaluations}, {"restarts", b.restarts}, {"seed", b.seed}};
}

QState load_state(const std::string& path) {
  if (path.empty()) throw io::FormatError("--state is required");
  const QState s = catalog::as_density(io::read_state(path));
  require_valid(s);
  return s;
}

json ensemble_json(const LabeledEnsemble& ens) {
  json out = json::array();
  for (const auto& it : ens.items)
    out.push_back({{"probability", it.probability},
                   {"state", it.pure ? io::to_json(*it.pure) : io::to_json(it.state)}});
  return out;
}

template <class Arg>
void record_run(json& rep, const OptimizationResult<Arg>& r) {
  rep["evaluations"] = r.evaluations;
  rep["converged"] = r.converged;
  rep["gap_estimate"] = r.gap_estimate;
  rep["restarts_used"] = r.restarts_used;
}

void emit(const RunConfig& cfg, const json& report, const std::string& text, std::ostream& out) {
  if (!cfg.out_path.empty()) io::write_json(cfg.out_path, report);
  if (cfg.format == "json") out << report.dump(1) << '\n';
  else out << text;
}

// Library exceptions to documented exit codes.
int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const UnknownName& e) {
    err << "error: " << e.what() << '\n';
    return kUnknownName;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kDimensionMismatch;
  } catch (const LabelError& e) {
    err << "error: " << e.what() << '\n';
    return kDimensionMismatch;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed document: " << e.what() << '\n';
    return kInvalidFile;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidFile;
  }
}

std::string first_other(const QState& s, const std::string& label) {
  for (const auto& l : s.labels())
    if (l != label) return l;
  throw LabelError("state has no subsystem besides '" + label + "'");
}

}  // namespace

const std::vector<std::string>& measure_names() {
  static const std::vector<std::string> names{"entropy", "coherent_information", "concurrence", "wootters",
                                              "eof", "holevo", "csecret1", "ed1", "squashed_ub"};
  return names;
}

int cmd_compute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded([&] {
    if (std::find(measure_names().begin(), measure_names().end(), cfg.name) == measure_names().end())
      throw UnknownName("unknown measure '" + cfg.name + "'");
    const QState state = load_state(cfg.state_path);
    const Budget budget = make_budget(cfg);
    json rep;
    rep["command"] = "compute";
    rep["measure"] = cfg.name;
    rep["state"] = cfg.state_path;
    rep["budget"] = budget_json(budget);
    rep["evaluations"] = 0;
    rep["converged"] = true;
    std::string direction = "exact";
    double value = 0.0;
    const auto& labels = state.labels();

    if (cfg.name == "entropy") {
      const Selector keep = cfg.keep.empty() ? Selector(labels) : Selector(cfg.keep);
      value = marginal_entropy(state, keep);
      rep["keep"] = keep.labels();
    } else if (cfg.name == "coherent_information") {
      if (cfg.keep.size() != 2 && labels.size() != 2)
        throw LabelError("coherent_information needs --keep A --keep B on a multipartite state");
      const std::string a = cfg.keep.size() == 2 ? cfg.keep[0] : labels[0];
      const std::string b = cfg.keep.size() == 2 ? cfg.keep[1] : labels[1];
      value = coherent_information(state, a, b);
    } else if (cfg.name == "concurrence") {
      value = concurrence(state);
    } else if (cfg.name == "wootters") {
      value = wootters_eof(state);
    } else if (cfg.name == "eof") {
      const auto r = optimize_eof(state, budget);
      value = r.value;
      direction = "upper_bound";
      record_run(rep, r);
      rep["witness"] = ensemble_json(r.argument);
    } else if (cfg.name == "holevo") {
      direction = "lower_bound";
      if (!cfg.povm_path.empty()) {
        const Povm povm = io::read_povm(cfg.povm_path);
        value = holevo_quantity(state, povm);
        rep["witness"] = io::to_json(povm);
      } else {
        const std::string measured = cfg.measured.empty() ? labels.back() : cfg.measured;
        const auto r = optimize_holevo(state, measured, budget);
        value = r.value;
        record_run(rep, r);
        rep["witness"] = io::to_json(r.argument);
      }
    } else if (cfg.name == "csecret1") {
      direction = "lower_bound";
      const std::string b = !cfg.measured.empty() ? cfg.measured
                            : !cfg.povm_path.empty() ? io::read_povm(cfg.povm_path).target()
                                                     : labels.at(std::min<std::size_t>(1, labels.size() - 1));
      const std::string a = first_other(state, b);
      Selector e;
      for (const auto& l : labels)
        if (l != a && l != b) e = e + Selector(l);
      if (!cfg.povm_path.empty()) {
        const Povm povm = io::read_povm(cfg.povm_path);
        value = csecret1_value(state, povm, a, e);
        rep["witness"] = io::to_json(povm);
      } else {
        const auto r = optimize_csecret1(state, budget, b, a, e);
        value = r.value;
        record_run(rep, r);
        rep["witness"] = io::to_json(r.argument);
      }
    } else if (cfg.name == "ed1") {
      direction = "lower_bound";
      const std::string b = cfg.measured.empty() ? labels.back() : cfg.measured;
      const auto r = ed1_lower_bound(state, budget, b);
      value = r.value;
      record_run(rep, r);
      rep["identity_instrument"] = ed1_value(state, identity_instrument(state.layout().dim_of(b), b));
    } else if (cfg.name == "squashed_ub") {
      direction = "upper_bound";
      const auto r = optimize_squashed_ub(state, cfg.cap, budget);
      value = r.value;
      record_run(rep, r);
      rep["e_dim"] = r.argument.extension.e_dim();
      rep["witness"] = io::extension_to_json(r.argument.extension.state, r.argument.extension.marginal.labels(),
                                             r.argument.extension.e);
    }
    rep["value"] = value;
    rep["direction"] = direction;

    std::ostringstream text;
    text << cfg.name << " = " << std::setprecision(10) << value << " (" << direction;
    if (direction != "exact")
      text << ", evaluations " << rep["evaluations"].get<int>() << ", converged "
           << (rep["converged"].get<bool>() ? "yes" : "no");
    text << ")\n";
    emit(cfg, rep, text.str(), out);
    return static_cast<int>(kOk);
  }, err);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded([&] {
    for (const auto& s : cfg.suites)
      if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
        throw UnknownName("unknown suite '" + s + "'");
    std::vector<std::uint64_t> seeds = cfg.seeds;
    if (seeds.empty())
      for (int i = 1; i <= cfg.trials; ++i) seeds.push_back(static_cast<std::uint64_t>(i));
    Budget budget = make_budget(cfg);

    VerificationReport rep;
    if (cfg.state_path.empty()) {
      rep = run_suite(cfg.suites, seeds, budget, cfg.gap_tol);
    } else {
      const QState state = load_state(cfg.state_path);
      rep.suite = "run";
      rep.seeds = {budget.seed};
      for (const auto& s : cfg.suites) {
        if (s == "thm1") rep.children.push_back(verify_thm1(state, budget, cfg.gap_tol, cfg.state_path, budget.seed));
        else if (s == "cor1") rep.children.push_back(verify_cor1(state, budget, cfg.gap_tol, cfg.state_path, budget.seed));
        else if (s == "cor2")
          rep.children.push_back(verify_cor2_single_letter(state, budget, cfg.gap_tol, cfg.state_path, budget.seed));
        else if (s == "main5") rep.children.push_back(verify_main5_single_letter(state, cfg.state_path, budget.seed));
        else throw UnknownName("suite '" + s + "' does not take an input state");
      }
      finalize(rep);
    }
    emit(cfg, io::to_json(rep), io::summary_table(rep), out);
    return static_cast<int>(rep.pass ? kOk : kVerifyFailed);
  }, err);
}

int cmd_catalog(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded([&] {
    if (!catalog::known(cfg.name)) throw UnknownName("unknown catalog entry '" + cfg.name + "'");
    catalog::Params params;
    params.p = cfg.p;
    params.dims = cfg.dims;
    params.seed = cfg.seeds.empty() ? 0 : cfg.seeds.front();
    params.rank = cfg.rank;
    const catalog::Entry entry = catalog::make(cfg.name, params);
    const json doc = io::to_json(entry);
    if (!cfg.out_path.empty()) {
      io::write_json(cfg.out_path, doc);
      const QState s = catalog::as_density(entry);
      out << "wrote " << cfg.name << " (" << s.dim() << "-dimensional, "
          << (std::holds_alternative<PureState>(entry) ? "vector" : "matrix") << ") to " << cfg.out_path << '\n';
    } else {
      out << doc.dump(1) << '\n';
    }
    return static_cast<int>(kOk);
  }, err);
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "compute") return cmd_compute(cfg, out, err);
  if (cfg.command == "verify") return cmd_verify(cfg, out, err);
  if (cfg.command == "catalog") return cmd_catalog(cfg, out, err);
  err << "error: unknown command '" << cfg.command << "'\n";
  return kUnknownName;
}

}  // namespace qcorr::cli
