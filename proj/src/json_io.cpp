#include "dulac/json_io.hpp"

#include "dulac/error.hpp"

#include <charconv>
#include <cmath>

namespace dulac::io {

namespace {

const json& need(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        fail(ErrorKind::Schema, where + ": missing field '" + key + "'");
    return j.at(key);
}

std::string string_of(const json& j, const std::string& what)
{
    if (!j.is_string())
        fail(ErrorKind::Schema, what + ": expected a string, got " + j.dump());
    return j.get<std::string>();
}

unsigned long index_of(const json& j, const std::string& what)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        fail(ErrorKind::Schema, what + ": expected a nonnegative integer, got " + j.dump());
    return j.get<unsigned long>();
}

std::vector<unsigned long> indices_of(const json& j, const std::string& what)
{
    if (!j.is_array())
        fail(ErrorKind::Schema, what + ": expected an array of integers");
    std::vector<unsigned long> out;
    for (const auto& x : j)
        out.push_back(index_of(x, what));
    return out;
}

std::string shortest(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

template <class F>
auto wrap(const std::string& where, F&& f)
{
    try {
        return f();
    } catch (const json::exception& e) {
        fail(ErrorKind::Schema, where + ": " + e.what());
    }
}

} // namespace

Rational rational_from_json(const json& j, const std::string& what)
{
    if (j.is_number_integer())
        return Rational(j.dump());
    if (j.is_number_float()) {
        double v = j.get<double>();
        if (!std::isfinite(v))
            fail(ErrorKind::Schema, what + ": non-finite number");
        return parse_decimal_rational(shortest(v));
    }
    if (j.is_string())
        return parse_decimal_rational(j.get<std::string>());
    fail(ErrorKind::Schema, what + ": expected a number or rational string, got " + j.dump());
}

json rational_to_json(const Rational& q)
{
    if (q.get_den() == 1 && q.get_num().fits_slong_p())
        return q.get_num().get_si();
    double d = q.get_d();
    if (std::isfinite(d)) {
        std::string text = shortest(d);
        if (parse_decimal_rational(text) == q)
            return d;
    }
    return q.get_str();
}

json cutoff_to_json(const Cutoff& c)
{
    return c.is_infinite() ? json("inf") : rational_to_json(c.value());
}

Cutoff cutoff_from_json(const json& j)
{
    if (j.is_null() || (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "+inf")))
        return Cutoff::infinite();
    return Cutoff(rational_from_json(j, "cutoff"));
}

json scalar_to_json(const ExactScalar& s)
{
    return s.str();
}

json poly_to_json(const TPoly& p)
{
    return p.to_strings();
}

TPoly poly_from_json(const json& j)
{
    if (!j.is_array())
        fail(ErrorKind::Schema, "polynomial: expected an array of scalar strings");
    std::vector<ExactScalar> c;
    for (const auto& x : j)
        c.push_back(ExactScalar::parse(string_of(x, "polynomial coefficient")));
    return TPoly(std::move(c));
}

json exponent_to_json(const Exponent& e)
{
    return to_strings(e);
}

Exponent exponent_from_json(const json& j, const ExponentBasis& basis)
{
    if (!j.is_array())
        fail(ErrorKind::Schema, "exponent: expected an array of coordinate strings");
    std::vector<std::string> coords;
    for (const auto& x : j)
        coords.push_back(x.is_string() ? x.get<std::string>() : x.dump());
    return parse_exponent(coords, basis);
}

json exponent_value_json(const Exponent& e, const ExponentBasis& basis)
{
    if (auto v = exact_value(e, basis))
        return v->str();
    return nullptr;
}

json series_to_json(const DulacSeries& f)
{
    json terms = json::array();
    for (const auto& t : f.terms())
        terms.push_back({{"exp", exponent_to_json(t.exp)},
                         {"value", exponent_value_json(t.exp, *f.basis())},
                         {"poly", poly_to_json(t.coeff)}});
    return {{"cutoff", cutoff_to_json(f.cutoff())}, {"terms", terms}};
}

DulacSeries series_from_json(const json& j, const BasisPtr& basis)
{
    return wrap("series", [&] {
        Cutoff c = j.contains("cutoff") ? cutoff_from_json(j.at("cutoff")) : Cutoff::infinite();
        std::vector<Term> terms;
        for (const auto& t : need(j, "terms", "series"))
            terms.push_back({exponent_from_json(need(t, "exp", "series term"), *basis),
                             poly_from_json(need(t, "poly", "series term"))});
        return DulacSeries::from_terms(basis, std::move(terms), c);
    });
}

json prefix_to_json(const DulacSeries& f)
{
    json out = json::array();
    for (const auto& t : f.terms())
        out.push_back({{"lambda", exponent_to_json(t.exp)}, {"c", poly_to_json(t.coeff)}});
    return out;
}

DulacSeries prefix_from_json(const json& j, const BasisPtr& basis)
{
    return wrap("prefix", [&] {
        if (!j.is_array())
            fail(ErrorKind::Schema, "prefix: expected an array of {lambda, c}");
        std::vector<Term> terms;
        for (const auto& t : j) {
            Exponent e = exponent_from_json(need(t, "lambda", "prefix term"), *basis);
            for (const auto& prev : terms)
                if (prev.exp == e)
                    fail(ErrorKind::Schema, "prefix: repeated exponent");
            terms.push_back({std::move(e), poly_from_json(need(t, "c", "prefix term"))});
        }
        return DulacSeries::from_terms(basis, std::move(terms));
    });
}

json ode_to_json(const ODESpec& f)
{
    json terms = json::array();
    for (const auto& t : f.terms())
        terms.push_back({{"coeff", scalar_to_json(t.coeff)}, {"x", t.p}, {"y", t.q}});
    json degree = f.degree() ? json(*f.degree()) : json(nullptr);
    return {{"n", f.n()}, {"degree", degree}, {"terms", terms}};
}

ODESpec ode_from_json(const json& j)
{
    return wrap("ode", [&] {
        unsigned long n = index_of(need(j, "n", "ode"), "ode.n");
        std::optional<long> degree;
        if (j.contains("degree") && !j.at("degree").is_null()) {
            if (!j.at("degree").is_number_integer())
                fail(ErrorKind::Schema, "ode.degree: expected an integer or null");
            degree = j.at("degree").get<long>();
        }
        std::vector<FTerm> terms;
        for (const auto& t : need(j, "terms", "ode")) {
            FTerm ft;
            ft.coeff = ExactScalar::parse(string_of(need(t, "coeff", "ode term"), "ode term coeff"));
            ft.p = t.contains("x") ? index_of(t.at("x"), "ode term x") : 0;
            ft.q = indices_of(need(t, "y", "ode term"), "ode term y");
            terms.push_back(std::move(ft));
        }
        return ODESpec::create(static_cast<unsigned>(n), std::move(terms), degree);
    });
}

json mseries_to_json(const MSeries& g)
{
    json gens = json::array();
    for (const auto& r : g.gens()->r())
        gens.push_back(exponent_to_json(r));
    json terms = json::array();
    for (const auto& [m, c] : g.terms())
        terms.push_back({{"m", m}, {"poly", poly_to_json(c)}});
    return {{"gens", gens}, {"terms", terms}, {"cutoff", cutoff_to_json(g.cutoff())}};
}

MSeries mseries_from_json(const json& j, const BasisPtr& basis)
{
    return wrap("mseries", [&] {
        std::vector<Exponent> r;
        for (const auto& e : need(j, "gens", "mseries"))
            r.push_back(exponent_from_json(e, *basis));
        auto gens = Generators::validate(std::move(r), basis);
        MSeries::TermMap terms;
        for (const auto& t : need(j, "terms", "mseries")) {
            MultiIndex m = indices_of(need(t, "m", "mseries term"), "mseries term m");
            if (terms.count(m))
                fail(ErrorKind::Schema, "mseries: repeated multi-index");
            terms.emplace(std::move(m), poly_from_json(need(t, "poly", "mseries term")));
        }
        Cutoff c = j.contains("cutoff") ? cutoff_from_json(j.at("cutoff")) : Cutoff::infinite();
        return MSeries::from_terms(gens, std::move(terms), c);
    });
}

json slope_to_json(const Slope& s)
{
    return s.infinite ? json("inf") : rational_to_json(s.value);
}

Slope slope_from_json(const json& j)
{
    if (j.is_string() && j.get<std::string>() == "inf")
        return Slope::inf();
    Rational v = rational_from_json(j, "s");
    if (sgn(v) <= 0)
        fail(ErrorKind::Schema, "s must be positive or \"inf\"");
    return Slope::finite(v);
}

json real_to_json(const Real& x)
{
    return x.str(17);
}

json double_to_json(double v)
{
    if (std::isfinite(v))
        return v;
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

json linear_to_json(const LinearData& lin)
{
    json A = json::array(), nu_j = json::array(), B = json::array();
    for (const auto& a : lin.A)
        A.push_back(scalar_to_json(a));
    for (const auto& v : lin.nu_j)
        nu_j.push_back(v ? exponent_to_json(*v) : json(nullptr));
    for (const auto& b : lin.B)
        B.push_back(b ? poly_to_json(*b) : json(nullptr));
    return {{"n", lin.n},
            {"nu", exponent_to_json(lin.nu)},
            {"nu_value", exponent_value_json(lin.nu, *lin.basis)},
            {"A", A},
            {"nu_j", nu_j},
            {"B", B},
            {"ell", lin.ell},
            {"L", poly_to_json(lin.L)},
            {"tau", lin.tau ? rational_to_json(*lin.tau) : json(nullptr)},
            {"warnings", lin.warnings}};
}

json conditions_to_json(const ConditionReport& r)
{
    json roots = json::array();
    for (const auto& z : r.roots)
        roots.push_back({{"re", double_to_json(z.re)}, {"im", double_to_json(z.im)}});
    return {{"lambda_m", exponent_to_json(r.lambda_m)},
            {"roots", roots},
            {"cond_i", r.cond_i},
            {"margin_i", double_to_json(r.margin_i)},
            {"cond_ii", r.cond_ii},
            {"margin_ii", double_to_json(r.margin_ii)},
            {"cond_iii", r.cond_iii ? json(*r.cond_iii) : json(nullptr)},
            {"margin_iii", double_to_json(r.margin_iii)},
            {"minimal_m", r.minimal_m ? json(*r.minimal_m) : json(nullptr)},
            {"notes", r.notes}};
}

json state_to_json(const SolutionState& st)
{
    json history = json::array();
    for (const auto& h : st.history)
        history.push_back({{"lambda", exponent_to_json(h.lambda)},
                           {"c", poly_to_json(h.c)},
                           {"b", poly_to_json(h.b)},
                           {"residual_val", double_to_json(h.residual_val)}});
    return {{"solution", series_to_json(st.solution)},
            {"prefix_terms", st.prefix_terms},
            {"linearization", linear_to_json(st.lin)},
            {"residual", {{"val", double_to_json(st.residual.val())},
                          {"cutoff", cutoff_to_json(st.residual.cutoff())},
                          {"terms", st.residual.size()}}},
            {"history", history},
            {"restarted", st.restarted}};
}

json reduced_to_json(const ReducedEquation& red)
{
    json ltilde = json::array();
    for (std::size_t j = 0; j < red.Ltilde.size(); ++j)
        ltilde.push_back({{"j", j}, {"series", series_to_json(red.Ltilde[j])}});
    json n = json::array();
    for (const auto& [q, a] : red.N)
        n.push_back({{"q", q}, {"series", series_to_json(a)}});
    return {{"n", red.n},
            {"m", red.m},
            {"lambda_m", exponent_to_json(red.lambda_m)},
            {"nu", exponent_to_json(red.nu)},
            {"s", slope_to_json(red.s)},
            {"tau", exponent_to_json(red.tau)},
            {"L", poly_to_json(red.L)},
            {"Ltilde", ltilde},
            {"N", n},
            {"conditions", conditions_to_json(red.conditions)},
            {"flags", red.flags}};
}

json gevrey_to_json(const GevreyReport& rep)
{
    json rows = json::array();
    for (const auto& r : rep.rows)
        rows.push_back({{"k", r.k},
                        {"re_lambda", r.re_text},
                        {"im_lambda", r.im_text},
                        {"deg_c", r.deg_c},
                        {"norm_R", real_to_json(r.norm)},
                        {"gamma_abs", real_to_json(r.gamma)},
                        {"rho", real_to_json(r.rho)},
                        {"envelope_Ck", real_to_json(r.envelope)}});
    auto fit = [](const GrowthFit& f) {
        return json{{"C", real_to_json(f.C)}, {"A", real_to_json(f.A)}, {"k_C", f.k_C},
                    {"k_A", f.k_A}, {"finite", f.finite}};
    };
    return {{"s", slope_to_json(rep.s)},
            {"R", real_to_json(rep.R)},
            {"rows", rows},
            {"fit_k", fit(rep.fit_k)},
            {"fit_re", fit(rep.fit_re)},
            {"verdict", to_string(rep.verdict)},
            {"radius", rep.radius ? real_to_json(*rep.radius) : json(nullptr)}};
}

Problem problem_from_json(const json& j)
{
    return wrap("problem", [&]() -> Problem {
        if (!j.is_object())
            fail(ErrorKind::Schema, "problem: expected a JSON object");
        unsigned precision = kDefaultPrecision;
        if (j.contains("precision")) {
            unsigned long p = index_of(j.at("precision"), "precision");
            if (p < 64 || p > kMaxPrecision)
                fail(ErrorKind::Schema, "precision must lie in [64, 1024], got " + std::to_string(p));
            precision = static_cast<unsigned>(p);
        }
        std::vector<std::string> literals{"1"};
        if (j.contains("basis")) {
            literals.clear();
            for (const auto& b : j.at("basis"))
                literals.push_back(string_of(b, "basis entry"));
        }
        BasisPtr basis = ExponentBasis::create(literals, precision);
        ODESpec ode = ode_from_json(need(j, "ode", "problem"));
        DulacSeries prefix = j.contains("prefix") ? prefix_from_json(j.at("prefix"), basis) : DulacSeries(basis);

        Problem p{basis, std::move(ode), std::move(prefix), {}, {}, {}, {}, precision, kDefaultGammaTolerance, {}};
        p.precision = precision;
        if (j.contains("generators")) {
            std::vector<Exponent> r;
            for (const auto& e : j.at("generators"))
                r.push_back(exponent_from_json(e, *basis));
            p.generators = std::move(r);
        }
        if (j.contains("cutoff")) {
            p.cutoff = rational_from_json(j.at("cutoff"), "cutoff");
            if (sgn(*p.cutoff) <= 0)
                fail(ErrorKind::Schema, "cutoff must be positive");
        }
        if (j.contains("R") && !j.at("R").is_null()) {
            p.R = rational_from_json(j.at("R"), "R");
            if (*p.R <= 1)
                fail(ErrorKind::Schema, "R must exceed 1");
        }
        if (j.contains("s_override") && !j.at("s_override").is_null())
            p.s_override = slope_from_json(j.at("s_override"));
        if (j.contains("tolerance")) {
            if (!j.at("tolerance").is_number() || !(j.at("tolerance").get<double>() > 0))
                fail(ErrorKind::Schema, "tolerance must be a positive number");
            p.tolerance = j.at("tolerance").get<double>();
        }
        if (j.contains("m") && !j.at("m").is_null())
            p.m = index_of(j.at("m"), "m");
        return p;
    });
}

json problem_to_json(const Problem& p)
{
    json out = {{"basis", p.basis->literals()},
                {"ode", ode_to_json(p.ode)},
                {"prefix", prefix_to_json(p.prefix)},
                {"precision", p.precision},
                {"tolerance", p.tolerance}};
    if (p.generators) {
        json g = json::array();
        for (const auto& r : *p.generators)
            g.push_back(exponent_to_json(r));
        out["generators"] = g;
    }
    if (p.cutoff)
        out["cutoff"] = rational_to_json(*p.cutoff);
    if (p.R)
        out["R"] = rational_to_json(*p.R);
    if (p.s_override)
        out["s_override"] = slope_to_json(*p.s_override);
    if (p.m)
        out["m"] = *p.m;
    return out;
}

json parse_text(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Schema, source + ": invalid JSON: " + e.what());
    }
}

} // namespace dulac::io
