#include "lovelock/serialize.hpp"

namespace lovelock {

json scalar_to_json(const Scalar &s)
{
	if (s.exact_mode())
		return s.str();
	return s.fval();
}

Scalar scalar_from_json(const json &j, Scalar::Mode mode)
{
	if (j.is_number())
		return mode == Scalar::Mode::Float ? Scalar::flt(j.get<double>())
		                                   : Scalar(Rational(j.get<long>()));
	Rational q(j.get<std::string>());
	q.canonicalize();
	return mode == Scalar::Mode::Float ? Scalar::flt(q.get_d()) : Scalar(q);
}

json jet_to_json(const Jet &a)
{
	json terms = json::array();
	for (const auto &[m, c] : a.terms) {
		json t;
		t["mi"] = mono_exps(m, a.nvars);
		t["c"] = scalar_to_json(c);
		terms.push_back(std::move(t));
	}
	json j;
	j["nvars"] = a.nvars;
	if (a.deg >= kDegInf)
		j["degree"] = "exact";
	else
		j["degree"] = a.deg;
	j["terms"] = std::move(terms);
	return j;
}

Jet jet_from_json(const json &j, Scalar::Mode mode)
{
	Jet a = Jet::zero(j.at("nvars").get<int>(), mode);
	const json &d = j.at("degree");
	a.deg = d.is_string() ? kDegInf : d.get<int>();
	for (const auto &t : j.at("terms")) {
		std::vector<int> mi = t.at("mi").get<std::vector<int>>();
		Scalar c = scalar_from_json(t.at("c"), mode);
		if (!c.is_zero())
			a.terms.emplace_back(mono_from_exps(mi), std::move(c));
	}
	std::sort(a.terms.begin(), a.terms.end(),
	          [](const auto &x, const auto &y) { return x.first < y.first; });
	return a;
}

json sym2_to_json(const SymT2<Jet> &t)
{
	json entries = json::array();
	for (int i = 0; i < t.dim; ++i)
		for (int j = i; j < t.dim; ++j)
			if (!t.at(i, j).is_zero() || reldeg(t.at(i, j)) < kDegInf) {
				json e;
				e["i"] = i;
				e["j"] = j;
				e["value"] = jet_to_json(t.at(i, j));
				entries.push_back(std::move(e));
			}
	json j;
	j["dim"] = t.dim;
	j["entries"] = std::move(entries);
	return j;
}

SymT2<Jet> sym2_from_json(const json &j, Scalar::Mode mode)
{
	int dim = j.at("dim").get<int>();
	SymT2<Jet> t(dim, Jet::zero(dim, mode));
	for (const auto &e : j.at("entries"))
		t.set(e.at("i").get<int>(), e.at("j").get<int>(), jet_from_json(e.at("value"), mode));
	return t;
}

json oneform_to_json(const OneForm<Jet> &w)
{
	json entries = json::array();
	for (int i = 0; i < w.dim; ++i) {
		json e;
		e["i"] = i;
		e["value"] = jet_to_json(w.at(i));
		entries.push_back(std::move(e));
	}
	json j;
	j["dim"] = w.dim;
	j["entries"] = std::move(entries);
	return j;
}

json dform_to_json(const DForm<Jet> &f)
{
	json entries = json::array();
	for (const auto &[k, v] : f.comp) {
		json e;
		e["I"] = tup_unpack(k.I);
		e["J"] = tup_unpack(k.J);
		e["value"] = jet_to_json(v);
		entries.push_back(std::move(e));
	}
	json j;
	j["dim"] = f.dim;
	j["bidegree"] = {f.pa, f.pb};
	j["entries"] = std::move(entries);
	return j;
}

DForm<Jet> dform_from_json(const json &j, Scalar::Mode mode)
{
	int dim = j.at("dim").get<int>();
	int a = j.at("bidegree")[0].get<int>();
	int b = j.at("bidegree")[1].get<int>();
	DForm<Jet> f = DForm<Jet>::zero(dim, a, b, Jet::zero(dim, mode));
	for (const auto &e : j.at("entries")) {
		Tup I = tup_pack(e.at("I").get<std::vector<int>>());
		Tup J = tup_pack(e.at("J").get<std::vector<int>>());
		f.set(I, J, jet_from_json(e.at("value"), mode));
	}
	return f;
}

json couplings_to_json(const Couplings &c)
{
	json j;
	j["n"] = c.n;
	json alpha = json::array();
	for (const auto &a : c.alpha)
		alpha.push_back(a.get_str());
	j["alpha"] = std::move(alpha);
	if (c.lovelock_beta)
		j["beta"] = "lovelock";
	else {
		json beta = json::array();
		for (const auto &b : c.beta)
			beta.push_back(b.get_str());
		j["beta"] = std::move(beta);
	}
	return j;
}

Couplings couplings_from_json(const json &j)
{
	int n = j.at("n").get<int>();
	std::vector<Rational> alpha;
	for (const auto &a : j.at("alpha")) {
		Rational q(a.get<std::string>());
		q.canonicalize();
		alpha.push_back(std::move(q));
	}
	const json &b = j.at("beta");
	if (b.is_string() && b.get<std::string>() == "lovelock")
		return Couplings::make_lovelock(n, std::move(alpha));
	std::vector<Rational> beta;
	for (const auto &x : b) {
		Rational q(x.get<std::string>());
		q.canonicalize();
		beta.push_back(std::move(q));
	}
	return Couplings::make(n, std::move(alpha), std::move(beta));
}

json kappa_root_to_json(const KappaRoot &r)
{
	json j;
	if (r.exact)
		j["exact"] = r.exact->get_str();
	j["interval"] = {r.lo.get_str(), r.hi.get_str()};
	j["approx"] = r.approx();
	j["multiplicity"] = r.multiplicity;
	j["a1_sign"] = r.a1_sign;
	if (r.a1_value)
		j["a1_value"] = r.a1_value->get_str();
	return j;
}

json expansion_to_json(const Expansion &e)
{
	json j;
	j["schema"] = "lovelock-fg/1";
	j["n"] = e.n;
	j["kappa"] = scalar_to_json(e.kappa);
	j["mode"] = e.kappa.exact_mode() ? "exact" : "float";
	j["couplings"] = couplings_to_json(e.couplings);
	j["trunc"] = e.trunc;
	json coeffs = json::array();
	for (size_t k = 0; k < e.coeffs.size(); ++k) {
		json c;
		c["order"] = int(k);
		c["tensor"] = sym2_to_json(e.coeffs[k]);
		coeffs.push_back(std::move(c));
	}
	j["coeffs"] = std::move(coeffs);
	j["trace_hn"] = jet_to_json(e.trace_hn);
	j["hn_free"] = sym2_to_json(e.hn_free);
	if (e.obstruction) {
		j["obstruction"] = sym2_to_json(*e.obstruction);
		j["obstruction_divergence"] = oneform_to_json(*e.obstruction_div);
	}
	j["log_present"] = e.log_present;
	j["dxdx_defect_from"] = e.dxdx_defect_from;
	json certs = json::array();
	for (const auto &c : e.certs) {
		json cc;
		cc["order"] = c.order;
		cc["a"] = c.a.get_str();
		cc["b"] = c.b.get_str();
		cc["c"] = c.c.get_str();
		certs.push_back(std::move(cc));
	}
	j["certs"] = std::move(certs);
	return j;
}

Expansion expansion_from_json(const json &j)
{
	Expansion e;
	if (j.at("schema").get<std::string>() != "lovelock-fg/1")
		throw std::runtime_error("expansion document: unknown schema");
	Scalar::Mode mode = j.value("mode", std::string("exact")) == "float" ? Scalar::Mode::Float
	                                                                     : Scalar::Mode::Exact;
	e.n = j.at("n").get<int>();
	e.kappa = scalar_from_json(j.at("kappa"), mode);
	e.couplings = couplings_from_json(j.at("couplings"));
	e.trunc = j.at("trunc").get<int>();
	e.coeffs.assign(size_t(e.trunc) + 1, SymT2<Jet>(e.n, Jet::zero(e.n, mode)));
	for (const auto &c : j.at("coeffs")) {
		int k = c.at("order").get<int>();
		if (k >= 0 && k <= e.trunc)
			e.coeffs[size_t(k)] = sym2_from_json(c.at("tensor"), mode);
	}
	e.trace_hn = jet_from_json(j.at("trace_hn"), mode);
	e.hn_free = sym2_from_json(j.at("hn_free"), mode);
	if (j.contains("obstruction")) {
		e.obstruction = sym2_from_json(j.at("obstruction"), mode);
		OneForm<Jet> d(e.n, Jet::zero(e.n, mode));
		for (const auto &x : j.at("obstruction_divergence").at("entries"))
			d.set(x.at("i").get<int>(), jet_from_json(x.at("value"), mode));
		e.obstruction_div = std::move(d);
	}
	e.log_present = j.value("log_present", false);
	e.dxdx_defect_from = j.value("dxdx_defect_from", -1);
	for (const auto &c : j.value("certs", json::array())) {
		SolveCert sc;
		sc.order = c.at("order").get<int>();
		sc.a = Rational(c.at("a").get<std::string>());
		sc.b = Rational(c.at("b").get<std::string>());
		sc.c = Rational(c.at("c").get<std::string>());
		e.certs.push_back(std::move(sc));
	}
	return e;
}

namespace {

json block_report_to_json(const BlockReport &b)
{
	json j;
	j["name"] = b.name;
	j["offset"] = b.offset;
	j["trunc"] = b.trunc >= kDegInf ? json("inf") : json(b.trunc);
	j["verified_through"] = b.verified_through;
	j["first_nonzero"] = b.first_nonzero;
	j["leading_abs"] = b.leading_abs;
	return j;
}

} // namespace

json residual_report_to_json(const ResidualReport &r)
{
	json j;
	j["n"] = r.n;
	j["trunc"] = r.trunc;
	j["log_present"] = r.log_present;
	j["blocks"] = {block_report_to_json(r.dxdx), block_report_to_json(r.mixed),
	               block_report_to_json(r.tangential)};
	return j;
}

json float_render(const json &j)
{
	if (j.is_string()) {
		const std::string &s = j.get_ref<const std::string &>();
		// rational strings become decimal approximations
		if (!s.empty() && (std::isdigit(s[0]) || s[0] == '-')) {
			try {
				Rational q(s);
				q.canonicalize();
				return json(q.get_d());
			} catch (...) {
				return j;
			}
		}
		return j;
	}
	if (j.is_object()) {
		json out = json::object();
		for (auto it = j.begin(); it != j.end(); ++it)
			out[it.key()] = float_render(it.value());
		return out;
	}
	if (j.is_array()) {
		json out = json::array();
		for (const auto &x : j)
			out.push_back(float_render(x));
		return out;
	}
	return j;
}

} // namespace lovelock
