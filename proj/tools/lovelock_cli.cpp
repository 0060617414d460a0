// Batch front door: parse a single JSON config, dispatch to the engine,
// emit a deterministic structured report on stdout (or --out) and encode
// the outcome in the exit code:
//   0 all checks pass, 1 check failure, 2 usage/config error,
//   3 unsupported regime (A_1 = 0, empty admissible set with kappa=auto, ...)

#include "lovelock/identities.hpp"
#include "lovelock/presets.hpp"
#include "lovelock/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace lovelock;
namespace pre = lovelock::presets;

namespace {

struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

json read_config(const std::string &path)
{
	try {
		if (path == "-")
			return json::parse(std::cin);
		std::ifstream in(path);
		if (!in)
			throw UsageError("cannot open config file: " + path);
		return json::parse(in);
	} catch (const json::parse_error &e) {
		throw UsageError(std::string("config is not valid JSON: ") + e.what());
	}
}

void emit(const json &doc, const std::string &out, bool render_floats)
{
	json final = render_floats ? float_render(doc) : doc;
	std::string text = final.dump(2);
	text.push_back('\n');
	if (out.empty() || out == "-")
		std::cout << text;
	else {
		std::ofstream o(out);
		if (!o)
			throw UsageError("cannot open output file: " + out);
		o << text;
	}
}

Couplings couplings_of(const json &cfg)
{
	if (!cfg.contains("n") || !cfg.contains("alpha") || !cfg.contains("beta"))
		throw UsageError("config needs n, alpha and beta");
	return couplings_from_json(cfg);
}

/// "auto" picks the smallest rational admissible root; an explicit "p/q"
/// is validated against the kappa polynomial and the A_1 gate by expand()
Scalar resolve_kappa(const json &cfg, const Couplings &c, Scalar::Mode mode)
{
	const json &k = cfg.value("kappa", json("auto"));
	if (k.is_string() && k.get<std::string>() == "auto") {
		auto roots = limsec(c);
		if (roots.empty())
			throw RegimeError("kappa=auto: the admissible set of limiting curvatures is empty");
		for (const auto &r : roots)
			if (r.exact)
				return mode == Scalar::Mode::Float ? Scalar::flt(r.exact->get_d())
				                                   : Scalar(*r.exact);
		if (mode == Scalar::Mode::Float)
			return Scalar::flt(roots.front().approx());
		throw RegimeError("kappa=auto: only irrational admissible curvatures exist; "
		                  "rerun in float mode or pass kappa explicitly");
	}
	return scalar_from_json(k, mode);
}

int parse_int_arg(const std::string &s, size_t &pos)
{
	size_t end = s.find_first_of(",)", pos);
	if (end == std::string::npos)
		throw UsageError("malformed preset arguments");
	int v = std::stoi(s.substr(pos, end - pos));
	pos = s[end] == ',' ? end + 1 : end;
	return v;
}

Metric<Jet> boundary_metric_of(const json &cfg, int n, int order_N, uint64_t seed,
                               Scalar::Mode mode)
{
	if (mode == Scalar::Mode::Float)
		throw RegimeError("float-mode boundary metrics are not supported; the solver runs "
		                  "exactly and only kappa may be irrational");
	const json &bm = cfg.value("boundary_metric", json("flat"));
	int need = required_boundary_degree(order_N) + 2;
	if (bm.is_object()) {
		SymT2<Jet> t = sym2_from_json(bm, mode);
		return Metric<Jet>(t.to_mat(), Jet::zero(t.dim, mode));
	}
	std::string s = bm.get<std::string>();
	if (s == "flat")
		return pre::flat(n);
	if (s == "round_sphere")
		return pre::round_sphere(n, need);
	if (s.rfind("conformally_flat(", 0) == 0) {
		size_t pos = s.find('(') + 1;
		int phi_seed = parse_int_arg(s, pos);
		int deg = s[pos] == ')' ? need : parse_int_arg(s, pos);
		return pre::conformally_flat(n, deg, pre::random_phi(uint64_t(phi_seed), n, deg, 3));
	}
	if (s.rfind("product_torus(", 0) == 0) {
		size_t pos = s.find('(') + 1;
		int k = parse_int_arg(s, pos);
		if (k <= 0 || k >= n)
			throw UsageError("product_torus(k): k must be in 1..n-1");
		return pre::product_with_torus(seed, n - k, k, need);
	}
	if (s.rfind("random(", 0) == 0) {
		size_t pos = s.find('(') + 1;
		int rs = parse_int_arg(s, pos);
		int deg = parse_int_arg(s, pos);
		return pre::random_metric(uint64_t(rs), n, deg);
	}
	throw UsageError("unknown boundary_metric preset: " + s);
}

json base_doc(const std::string &command)
{
	json j;
	j["schema"] = "lovelock-fg/1";
	j["command"] = command;
	return j;
}

int cmd_limsec(const json &cfg, const std::string &out, bool fr)
{
	Couplings c = couplings_of(cfg);
	QPoly p = kappa_polynomial(c);
	json doc = base_doc("limsec");
	json pc = json::array();
	for (const auto &q : p.c)
		pc.push_back(q.get_str());
	doc["kappa_polynomial"] = std::move(pc);
	json roots = json::array();
	for (const auto &r : limsec(c)) {
		json rj = kappa_root_to_json(r);
		if (r.exact) {
			DerivedCoeffs d = coeff_functions(c, *r.exact);
			json dj;
			dj["A_alpha"] = {d.A_alpha[1].get_str(), d.A_alpha[2].get_str(),
			                 d.A_alpha[3].get_str(), d.A_alpha[4].get_str()};
			dj["A_beta"] = {d.A_beta[1].get_str(), d.A_beta[2].get_str(),
			                d.A_beta[3].get_str(), d.A_beta[4].get_str()};
			dj["B12"] = d.B12.get_str();
			dj["B34"] = d.B34.get_str();
			rj["derived"] = std::move(dj);
		}
		roots.push_back(std::move(rj));
	}
	doc["roots"] = std::move(roots);
	json lam = json::array();
	for (const auto &l : lambda_coeffs(c.n))
		lam.push_back(l.get_str());
	doc["lambda"] = std::move(lam);
	doc["status"] = "pass";
	emit(doc, out, fr);
	return 0;
}

int cmd_expand(const json &cfg, const std::string &out, bool fr, uint64_t seed)
{
	Couplings c = couplings_of(cfg);
	Scalar::Mode mode = cfg.value("mode", std::string("exact")) == "float"
	                        ? Scalar::Mode::Float
	                        : Scalar::Mode::Exact;
	int N = cfg.value("order_N", c.n);
	Scalar kappa = resolve_kappa(cfg, c, mode);
	Metric<Jet> h0 = boundary_metric_of(cfg, c.n, N, seed, mode);
	Expansion e = expand(h0, c, kappa, N);
	ResidualReport rep = residual_report(e);
	json doc = base_doc("expand");
	doc["expansion"] = expansion_to_json(e);
	doc["residual_report"] = residual_report_to_json(rep);
	bool ok = rep.dxdx.first_nonzero < 0 && rep.tangential.first_nonzero < 0;
	if (e.log_present) // the obstruction legitimately stops the tangential block
		ok = rep.dxdx.first_nonzero < 0 &&
		     (rep.tangential.first_nonzero < 0 || rep.tangential.first_nonzero >= e.n);
	doc["status"] = ok ? "pass" : "fail";
	emit(doc, out, fr);
	return ok ? 0 : 1;
}

int cmd_closed_form(const json &cfg, const std::string &out, bool fr, uint64_t seed)
{
	Couplings c = couplings_of(cfg);
	Scalar::Mode mode = cfg.value("mode", std::string("exact")) == "float"
	                        ? Scalar::Mode::Float
	                        : Scalar::Mode::Exact;
	Scalar kappa = resolve_kappa(cfg, c, mode);
	Metric<Jet> h0 = boundary_metric_of(cfg, c.n, 4, seed, mode);
	json doc = base_doc("closed-form");
	if (c.n >= 5) {
		ClosedForms cf = closed_forms(h0, c, kappa);
		doc["h2"] = sym2_to_json(cf.h2);
		doc["h4"] = sym2_to_json(cf.h4);
	} else {
		doc["h2"] = sym2_to_json(closed_form_h2(h0, kappa));
	}
	doc["status"] = "pass";
	emit(doc, out, fr);
	return 0;
}

int cmd_verify(const json &cfg, const std::string &out, bool fr)
{
	const json &ej = cfg.contains("expansion") ? cfg.at("expansion") : cfg;
	Expansion e = expansion_from_json(ej);
	ResidualReport rep = residual_report(e);
	json doc = base_doc("verify");
	doc["residual_report"] = residual_report_to_json(rep);
	bool ok = rep.dxdx.first_nonzero < 0 &&
	          (rep.tangential.first_nonzero < 0 ||
	           (e.log_present && rep.tangential.first_nonzero >= e.n));
	doc["status"] = ok ? "pass" : "fail";
	emit(doc, out, fr);
	return ok ? 0 : 1;
}

int cmd_linearize(const json &cfg, const std::string &out, bool fr, uint64_t seed)
{
	Couplings c = couplings_of(cfg);
	int n = c.n;
	Metric<Jet> g0 = pre::poincare_ball(n + 1, 4);
	json checks = json::array();
	bool all = true;
	int dirs = cfg.value("directions", 3);
	for (int d = 0; d < dirs; ++d) {
		SymT2<Jet> r = pre::random_sym2(seed + uint64_t(d), n + 1, 4);
		auto push = [&](const std::string &name, int q, bool ok) {
			json cj;
			cj["check"] = name;
			cj["q"] = q;
			cj["direction"] = d;
			cj["pass"] = ok;
			checks.push_back(std::move(cj));
			all = all && ok;
		};
		for (int q = 1; 2 * q <= n + 1; ++q) {
			push("lovelock-ricci", q, lin_check(g0, r, c, LinKind::Ric, q).ok);
			push("lovelock-scalar", q, lin_check(g0, r, c, LinKind::Scal, q).ok);
			push("lovelock-einstein", q, lin_check(g0, r, c, LinKind::Einstein, q).ok);
		}
		push("gauge-fixed-pure", 0, lin_check(g0, r, c, LinKind::QPure).ok);
		if (c.lovelock_beta)
			push("gauge-fixed-mixed", 0, lin_check(g0, r, c, LinKind::QMixed).ok);
	}
	json doc = base_doc("linearize");
	doc["checks"] = std::move(checks);
	doc["status"] = all ? "pass" : "fail";
	emit(doc, out, fr);
	return all ? 0 : 1;
}

int cmd_identities(uint64_t seed, const std::string &out, bool fr)
{
	auto results = run_identity_suite(seed);
	json doc = base_doc("identities");
	doc["seed"] = seed;
	json checks = json::array();
	for (const auto &r : results) {
		json cj;
		cj["check"] = r.name;
		cj["pass"] = r.pass;
		if (!r.detail.empty())
			cj["detail"] = r.detail;
		checks.push_back(std::move(cj));
	}
	doc["checks"] = std::move(checks);
	bool ok = all_pass(results);
	doc["status"] = ok ? "pass" : "fail";
	emit(doc, out, fr);
	return ok ? 0 : 1;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Exact Fefferman-Graham expansions for generalized Lovelock equations"};
	app.require_subcommand(1);

	std::string config_path = "-", out_path;
	uint64_t seed = 0;
	bool has_seed = false;
	bool render_floats = false;
	std::string mode_override;

	app.add_option("--config", config_path, "JSON config file ('-' for stdin)");
	app.add_option("--out", out_path, "report output file (default stdout)");
	auto *seed_opt = app.add_option("--seed", seed, "seed override");
	app.add_option("--mode", mode_override, "mode override: exact|float");
	app.add_flag("--float-render", render_floats,
	             "render rationals as decimals in the report (values unchanged)");

	auto *sub_expand = app.add_subcommand("expand", "order-by-order expansion from boundary data");
	auto *sub_limsec = app.add_subcommand("limsec", "admissible limiting curvatures");
	auto *sub_closed = app.add_subcommand("closed-form", "closed-form h2 and h4");
	auto *sub_verify = app.add_subcommand("verify", "residual report for an expansion document");
	auto *sub_lin = app.add_subcommand("linearize", "linearization battery at the hyperbolic metric");
	auto *sub_ident = app.add_subcommand("identities", "full invariant suite with seeded RNG");
	for (auto *sub : {sub_expand, sub_limsec, sub_closed, sub_verify, sub_lin, sub_ident})
		sub->fallthrough();

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		int code = app.exit(e);
		return code == 0 ? 0 : 2;
	}
	has_seed = seed_opt->count() > 0;

	try {
		json cfg = json::object();
		if (app.got_subcommand(sub_ident)) {
			uint64_t s = has_seed ? seed : 0;
			return cmd_identities(s, out_path, render_floats);
		}
		cfg = read_config(config_path);
		if (!cfg.is_object())
			throw UsageError("config must be a JSON object");
		if (has_seed)
			cfg["seed"] = seed;
		if (!mode_override.empty())
			cfg["mode"] = mode_override;
		uint64_t s = cfg.value("seed", 0);

		if (app.got_subcommand(sub_limsec))
			return cmd_limsec(cfg, out_path, render_floats);
		if (app.got_subcommand(sub_expand))
			return cmd_expand(cfg, out_path, render_floats, s);
		if (app.got_subcommand(sub_closed))
			return cmd_closed_form(cfg, out_path, render_floats, s);
		if (app.got_subcommand(sub_verify))
			return cmd_verify(cfg, out_path, render_floats);
		if (app.got_subcommand(sub_lin))
			return cmd_linearize(cfg, out_path, render_floats, s);
		throw UsageError("no command given");
	} catch (const UsageError &e) {
		std::cerr << "config error: " << e.what() << "\n";
		return 2;
	} catch (const json::exception &e) {
		std::cerr << "config error: " << e.what() << "\n";
		return 2;
	} catch (const RegimeError &e) {
		std::cerr << "unsupported regime: " << e.what() << "\n";
		return 3;
	} catch (const DegreeError &e) {
		std::cerr << "config error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception &e) {
		std::cerr << "check failure: " << e.what() << "\n";
		return 1;
	}
}
