#include "cli.hpp"

#include "dulac/banach.hpp"
#include "dulac/error.hpp"
#include "dulac/gevrey.hpp"
#include "dulac/json_io.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

namespace dulac::cli {

namespace {

using io::json;

struct Options {
    std::string input;
    std::string cutoff;
    std::string R;
    unsigned precision = 0;
    std::uint64_t seed = 0;
    std::string output_dir;
    std::string format = "json";
    long m = 0;
    unsigned trials = 50;
};

int exit_code_for(ErrorKind k)
{
    switch (k) {
    case ErrorKind::HypothesisViolation:
    case ErrorKind::AllDerivativesVanish:
    case ErrorKind::NonpositiveValuation:
    case ErrorKind::DependentGenerators:
    case ErrorKind::NonpositiveRealPart:
    case ErrorKind::ExponentOutsideSemigroup:
    case ErrorKind::PreconditionViolated:
        return kHypothesis;
    case ErrorKind::Resonance:
        return kResonance;
    case ErrorKind::UndecidableComparison:
    case ErrorKind::IndeterminateRoot:
    case ErrorKind::InexactExponent:
        return kUndecidable;
    case ErrorKind::Parse:
    case ErrorKind::Schema:
    case ErrorKind::Basis:
        return kSchema;
    default:
        return kOther;
    }
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string join(const std::vector<std::string>& v, const char* sep)
{
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k)
        out += (k ? sep : "") + v[k];
    return out;
}

std::string exponent_text(const Exponent& e, const ExponentBasis& basis)
{
    if (auto v = exact_value(e, basis))
        return v->str();
    return "[" + join(to_strings(e), ", ") + "]";
}

std::string poly_text(const TPoly& p)
{
    if (p.is_zero())
        return "0";
    std::string out;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        if (p.coeffs()[k].is_zero())
            continue;
        std::string c = "(" + p.coeffs()[k].str() + ")";
        std::string mono = k == 0 ? "" : (k == 1 ? "*t" : "*t^" + std::to_string(k));
        out += (out.empty() ? "" : " + ") + c + mono;
    }
    return out;
}

class Session {
public:
    Session(const Options& opt, std::ostream& out, std::ostream& err) : opt_(opt), out_(out), err_(err) {}

    void load(std::istream& stdin_stream)
    {
        std::stringstream buf;
        if (opt_.input == "-") {
            buf << stdin_stream.rdbuf();
        } else {
            std::ifstream in(opt_.input);
            if (!in)
                fail(ErrorKind::Schema, "cannot read problem file '" + opt_.input + "'");
            buf << in.rdbuf();
        }
        json j = io::parse_text(buf.str(), opt_.input == "-" ? "<stdin>" : opt_.input);
        if (opt_.precision != 0) {
            if (opt_.precision < 64 || opt_.precision > kMaxPrecision)
                fail(ErrorKind::Schema, "--precision must lie in [64, 1024]");
            j["precision"] = opt_.precision;
        }
        problem_ = io::problem_from_json(j);
        precision_.emplace(problem_->precision);
    }

    const io::Problem& problem() const { return *problem_; }

    Rational cutoff() const
    {
        if (!opt_.cutoff.empty()) {
            Rational c = parse_decimal_rational(opt_.cutoff);
            if (sgn(c) <= 0)
                fail(ErrorKind::Schema, "--cutoff must be positive");
            return c;
        }
        return problem_->cutoff ? *problem_->cutoff : Rational(10);
    }

    Real R() const
    {
        Rational r = 2;
        if (!opt_.R.empty())
            r = parse_decimal_rational(opt_.R);
        else if (problem_->R)
            r = *problem_->R;
        if (r <= 1)
            fail(ErrorKind::Domain, "R must exceed 1, got " + r.get_str());
        return Real(r);
    }

    SolutionState solve() const
    {
        auto st = extend(problem_->ode, problem_->prefix, cutoff());
        check_linearization(st.lin);
        return st;
    }

    Slope slope_of(const LinearData& lin) const
    {
        return problem_->s_override ? *problem_->s_override : slope(lin);
    }

    void check_linearization(const LinearData& lin) const
    {
        for (const auto& w : lin.warnings) {
            if (w.rfind("DerivativeYnZero", 0) == 0)
                fail(ErrorKind::HypothesisViolation, w);
        }
    }

    std::size_t m_or(std::size_t fallback) const
    {
        if (opt_.m > 0)
            return static_cast<std::size_t>(opt_.m);
        if (problem_->m)
            return *problem_->m;
        return std::max<std::size_t>(fallback, 1);
    }

    void emit_json(const json& j, const std::string& file)
    {
        std::string text = j.dump(2) + "\n";
        write_file(file, text);
        if (opt_.format == "json")
            out_ << text;
    }

    void write_file(const std::string& name, const std::string& text)
    {
        if (opt_.output_dir.empty())
            return;
        std::filesystem::create_directories(opt_.output_dir);
        std::ofstream f(std::filesystem::path(opt_.output_dir) / name, std::ios::binary);
        if (!f)
            fail(ErrorKind::Schema, "cannot write '" + name + "' in '" + opt_.output_dir + "'");
        f << text;
    }

    void require_format(std::initializer_list<const char*> allowed, const std::string& cmd)
    {
        for (const char* a : allowed)
            if (opt_.format == a)
                return;
        fail(ErrorKind::Schema, cmd + ": format '" + opt_.format + "' is not available");
    }

    const Options& opt() const { return opt_; }
    std::ostream& out() { return out_; }

private:
    const Options& opt_;
    std::ostream& out_;
    std::ostream& err_;
    std::optional<io::Problem> problem_;
    std::optional<ScopedPrecision> precision_;
};

std::string terms_csv(const DulacSeries& f)
{
    std::ostringstream os;
    os << "k,re_lambda,im_lambda,exp,poly\n";
    std::size_t k = 0;
    for (const auto& t : f.terms()) {
        ++k;
        std::string re, im;
        if (auto v = exact_value(t.exp, *f.basis())) {
            re = v->re().get_str();
            im = v->im().get_str();
        } else {
            std::ostringstream r, i;
            r.precision(17);
            i.precision(17);
            r << re_double(t.exp, *f.basis());
            i << im_double(t.exp, *f.basis());
            re = r.str();
            im = i.str();
        }
        os << k << ',' << csv_field(re) << ',' << csv_field(im) << ','
           << csv_field(join(to_strings(t.exp), " ")) << ',' << csv_field(join(t.coeff.to_strings(), " "))
           << '\n';
    }
    return os.str();
}

int cmd_solve(Session& s)
{
    s.require_format({"json", "csv", "text"}, "solve");
    auto st = s.solve();
    json j = {{"command", "solve"}, {"cutoff", io::rational_to_json(s.cutoff())}};
    j.update(io::state_to_json(st));
    std::string csv = terms_csv(st.solution);
    s.emit_json(j, "solution.json");
    s.write_file("terms.csv", csv);
    if (s.opt().format == "csv") {
        s.out() << csv;
    } else if (s.opt().format == "text") {
        const auto& b = *st.solution.basis();
        s.out() << "terms: " << st.solution.size() << "  cutoff: " << s.cutoff().get_str()
                << (st.restarted ? "  (restarted)" : "") << '\n';
        std::size_t k = 0;
        for (const auto& t : st.solution.terms())
            s.out() << "c_" << ++k << " x^" << exponent_text(t.exp, b) << " : " << poly_text(t.coeff) << '\n';
    }
    return kOk;
}

int cmd_analyze(Session& s)
{
    s.require_format({"json", "text"}, "analyze");
    const auto& p = s.problem();
    LinearData lin = extract_linearization(p.ode, p.prefix);
    s.check_linearization(lin);
    json sj = nullptr;
    std::string s_text = "undetermined";
    std::vector<std::string> notes;
    try {
        Slope sl = s.slope_of(lin);
        apply_slope(lin, sl);
        sj = io::slope_to_json(sl);
        s_text = sl.str();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::SlopeUndetermined)
            throw;
        notes.push_back(e.what());
    }
    json cond = nullptr;
    std::optional<ConditionReport> rep;
    if (!p.prefix.is_zero()) {
        rep = check_conditions(lin, p.prefix);
        cond = io::conditions_to_json(*rep);
    }
    json j = {{"command", "analyze"},
              {"linearization", io::linear_to_json(lin)},
              {"s", sj},
              {"conditions", cond},
              {"notes", notes}};
    s.emit_json(j, "analysis.json");
    if (s.opt().format == "text") {
        const auto& b = *lin.basis;
        s.out() << "nu = " << exponent_text(lin.nu, b) << "\nell = " << lin.ell << "\nA = [";
        for (std::size_t k = 0; k < lin.A.size(); ++k)
            s.out() << (k ? ", " : "") << lin.A[k].str();
        s.out() << "]\nL(zeta) = " << poly_text(lin.L) << "\ns = " << s_text << '\n';
        for (const auto& w : lin.warnings)
            s.out() << "warning: " << w << '\n';
        if (rep) {
            s.out() << "condition (i): " << (rep->cond_i ? "holds" : "fails") << "\ncondition (ii): "
                    << (rep->cond_ii ? "holds" : "fails") << '\n';
            if (rep->minimal_m)
                s.out() << "minimal m: " << *rep->minimal_m << '\n';
        }
    }
    return kOk;
}

int cmd_verify(Session& s)
{
    s.require_format({"json", "csv", "text"}, "verify");
    auto st = s.solve();
    Slope sl = s.slope_of(st.lin);
    auto rep = classify(sl, st.solution, s.R(), s.problem().tolerance);
    std::ostringstream csv;
    write_csv(csv, rep);
    json j = {{"command", "verify"}};
    j.update(io::gevrey_to_json(rep));
    s.emit_json(j, "gevrey.json");
    s.write_file("gevrey.csv", csv.str());
    if (s.opt().format == "csv") {
        s.out() << csv.str();
    } else if (s.opt().format == "text") {
        s.out() << "s = " << sl.str() << "\nR = " << rep.R.str(6) << "\nrows = " << rep.rows.size()
                << "\nC = " << rep.fit_k.C.str(12) << "\nA = " << rep.fit_k.A.str(12)
                << "\nverdict = " << to_string(rep.verdict) << '\n';
        if (rep.radius)
            s.out() << "radius = " << rep.radius->str(12) << '\n';
    }
    return kOk;
}

int cmd_reduce(Session& s)
{
    s.require_format({"json", "text"}, "reduce");
    auto st = s.solve();
    Slope sl = s.slope_of(st.lin);
    std::size_t m = s.m_or(st.prefix_terms);
    auto red = reduce(s.problem().ode, st.solution, m, sl);
    json j = {{"command", "reduce"}};
    j.update(io::reduced_to_json(red));
    s.emit_json(j, "reduced.json");
    if (s.opt().format == "text") {
        s.out() << "m = " << red.m << "\nlambda_m = " << exponent_text(red.lambda_m, *red.basis)
                << "\nL(zeta) = " << poly_text(red.L) << "\nN terms = " << red.N.size() << '\n';
        for (const auto& f : red.flags)
            s.out() << "flag: " << f << '\n';
    }
    return kOk;
}

int cmd_iota(Session& s)
{
    s.require_format({"json", "text"}, "iota");
    const auto& p = s.problem();
    if (!p.generators)
        fail(ErrorKind::Schema, "iota: the problem file declares no generators");
    auto gens = Generators::validate(*p.generators, p.basis);
    auto st = s.solve();
    std::size_t m = s.m_or(st.prefix_terms);
    auto bad = gap_violations(st.solution, m, *gens);
    const auto& b = *p.basis;
    if (!bad.empty()) {
        std::string ks;
        for (auto k : bad)
            ks += (ks.empty() ? "" : ", ") + std::to_string(k);
        fail(ErrorKind::ExponentOutsideSemigroup,
             "iota: gaps lambda_k - lambda_m are outside the declared semigroup for k = " + ks);
    }
    auto img = tail_image(st.solution, m, gens);
    Rational kfit = fit_degree_K(img);
    const Exponent& lm = st.solution.terms()[m - 1].exp;

    json kcal = nullptr, minimal = nullptr;
    Rational kc = 0;
    std::vector<std::string> notes;
    if (st.lin.tau) {
        try {
            auto info = compute_kcal(kfit, *gens, *st.lin.tau);
            kc = info.Kcal;
            kcal = io::rational_to_json(info.Kcal);
            minimal = info.minimal;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Domain)
                throw;
            notes.push_back(e.what());
        }
    } else {
        notes.push_back("tau unavailable; Kcal not computed");
    }
    auto rc = choose_R(kc, *gens, lm);
    json j = {{"command", "iota"},
              {"m", m},
              {"lambda_m", io::exponent_to_json(lm)},
              {"mseries", io::mseries_to_json(img)},
              {"K_fit", io::rational_to_json(kfit)},
              {"Kcal", kcal},
              {"minimal_elements", minimal},
              {"beta", io::rational_to_json(rc.beta)},
              {"theta_bound", io::rational_to_json(rc.theta_bound)},
              {"R_default", io::rational_to_json(rc.R_default)},
              {"Theta", io::rational_to_json(rc.Theta)},
              {"notes", notes}};
    s.emit_json(j, "iota.json");
    if (s.opt().format == "text") {
        s.out() << "m = " << m << "\nlambda_m = " << exponent_text(lm, b) << "\nterms = " << img.size()
                << "\nK_fit = " << kfit.get_str() << "\nR_default = " << rc.R_default.get_str() << '\n';
        for (const auto& [idx, c] : img.terms()) {
            s.out() << "(";
            for (std::size_t k = 0; k < idx.size(); ++k)
                s.out() << (k ? "," : "") << idx[k];
            s.out() << ") : " << poly_text(c) << '\n';
        }
    }
    return kOk;
}

// Portable draws so that a seed gives identical output on every platform.
long draw(std::mt19937_64& rng, long lo, long hi)
{
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

TPoly draw_poly(std::mt19937_64& rng, long max_deg)
{
    std::vector<ExactScalar> c;
    for (long k = draw(rng, 0, max_deg); k >= 0; --k)
        c.emplace_back(Rational(draw(rng, -6, 6), draw(rng, 1, 4)), Rational(draw(rng, -6, 6), draw(rng, 1, 4)));
    if (c.back().is_zero())
        c.back() = ExactScalar(1);
    return TPoly(std::move(c));
}

MultiIndex draw_index(std::mt19937_64& rng, std::size_t kappa, long max_entry)
{
    MultiIndex m(kappa);
    do {
        for (auto& x : m)
            x = static_cast<unsigned long>(draw(rng, 0, max_entry));
    } while (total_degree(m) == 0);
    return m;
}

MSeries draw_mseries(std::mt19937_64& rng, const GensPtr& g, long kcal)
{
    MSeries::TermMap terms;
    for (long k = draw(rng, 1, 4); k > 0; --k) {
        MultiIndex m = draw_index(rng, g->kappa(), 3);
        terms[m] = draw_poly(rng, kcal * static_cast<long>(total_degree(m)));
    }
    return MSeries::from_terms(g, std::move(terms));
}

json norm_harness(const GensPtr& g, std::mt19937_64& rng, unsigned trials, bool& all_pass)
{
    const auto& basis = *g->basis();
    const long kcal = 1;
    NormParams p;
    p.R = Real(3L);
    p.s = 1;
    p.Kcal = kcal;
    p.lambda_base = Exponent::zero(basis.size());
    unsigned l6 = 0, l5 = 0, l5_rejected = 0, maj = 0;
    Real worst6(0L), worst5(0L);
    for (unsigned t = 0; t < trials; ++t) {
        auto a = draw_mseries(rng, g, kcal);
        auto b = draw_mseries(rng, g, kcal);
        auto r6 = check_lemma6(a, b, p);
        l6 += r6.pass;
        if (r6.rhs.sign() > 0)
            worst6 = max(worst6, r6.lhs / r6.rhs);

        unsigned ell = static_cast<unsigned>(draw(rng, 0, 2));
        MultiIndex l = draw_index(rng, g->kappa(), 2);
        double rel = re_double(g->exponent_of(l), basis);
        unsigned j = ell + static_cast<unsigned>(std::min<long>(draw(rng, 0, 1), static_cast<long>(rel)));
        auto coeff = draw_poly(rng, kcal * static_cast<long>(total_degree(l)));
        auto r5 = check_lemma5(coeff, l, j, ell, a, p);
        l5 += r5.pass;
        if (r5.bound.sign() > 0)
            worst5 = max(worst5, r5.lhs / r5.bound);

        unsigned bad_j = ell + static_cast<unsigned>(std::floor(rel)) + 1;
        try {
            check_lemma5(coeff, l, bad_j, ell, a, p);
        } catch (const Error& e) {
            l5_rejected += e.kind() == ErrorKind::PreconditionViolated;
        }

        MajorantCoeffs coeffs;
        coeffs[{draw_index(rng, g->kappa(), 2), {1, 0}}] = TPoly(ExactScalar(1));
        coeffs[{draw_index(rng, g->kappa(), 2), {0, 2}}] = TPoly(ExactScalar(Rational(1, 2)));
        Real rho(Rational(draw(rng, 1, 9), 10));
        Real lo = majorant_bound(*g, coeffs, rho, {Real(1L), Real(1L)}, p);
        Real hi = majorant_bound(*g, coeffs, rho, {Real(2L), Real(1.5)}, p);
        maj += lo <= hi;
    }
    all_pass = all_pass && l6 == trials && l5 == trials && l5_rejected == trials && maj == trials;
    json gens = json::array();
    for (const auto& r : g->r())
        gens.push_back(io::exponent_to_json(r));
    return {{"basis", basis.literals()},
            {"gens", gens},
            {"trials", trials},
            {"lemma6_pass", l6},
            {"lemma6_worst_ratio", io::real_to_json(worst6)},
            {"lemma5_pass", l5},
            {"lemma5_worst_ratio", io::real_to_json(worst5)},
            {"lemma5_rejected", l5_rejected},
            {"majorant_monotone", maj}};
}

int cmd_check_norms(Session& s, bool have_input)
{
    s.require_format({"json", "text"}, "check-norms");
    std::optional<ScopedPrecision> prec;
    if (!have_input && s.opt().precision != 0) {
        if (s.opt().precision < 64 || s.opt().precision > kMaxPrecision)
            fail(ErrorKind::Schema, "--precision must lie in [64, 1024]");
        prec.emplace(s.opt().precision);
    }
    std::vector<GensPtr> sets;
    if (have_input && s.problem().generators) {
        sets.push_back(Generators::validate(*s.problem().generators, s.problem().basis));
    } else {
        sets.push_back(Generators::validate({Exponent(std::vector<Rational>{1})}, ExponentBasis::unit()));
        auto b = ExponentBasis::create({"1", "i"});
        sets.push_back(Generators::validate(
            {Exponent(std::vector<Rational>{1, 0}), Exponent(std::vector<Rational>{1, 1})}, b));
    }
    std::mt19937_64 rng(s.opt().seed);
    bool all = true;
    json runs = json::array();
    for (const auto& g : sets)
        runs.push_back(norm_harness(g, rng, s.opt().trials, all));
    json j = {{"command", "check-norms"}, {"seed", s.opt().seed}, {"runs", runs}, {"pass", all}};
    s.emit_json(j, "norms.json");
    if (s.opt().format == "text") {
        for (const auto& r : runs)
            s.out() << "gens " << r["gens"].dump() << ": lemma6 " << r["lemma6_pass"] << "/" << r["trials"]
                    << ", lemma5 " << r["lemma5_pass"] << "/" << r["trials"] << ", rejected "
                    << r["lemma5_rejected"] << ", majorant monotone " << r["majorant_monotone"] << '\n';
        s.out() << (all ? "PASS" : "FAIL") << '\n';
    }
    return all ? kOk : kOther;
}

int cmd_suggest(Session& s)
{
    s.require_format({"json", "text"}, "suggest-generators");
    auto st = s.solve();
    auto sug = suggest_generators(st.solution, st.lin.tau);
    const auto& b = *st.solution.basis();
    json gens = json::array(), values = json::array();
    for (const auto& r : sug.r) {
        gens.push_back(io::exponent_to_json(r));
        values.push_back(io::exponent_value_json(r, b));
    }
    json j = {{"command", "suggest-generators"},
              {"heuristic", true},
              {"generators", gens},
              {"values", values},
              {"notes", sug.notes}};
    s.emit_json(j, "generators.json");
    if (s.opt().format == "text") {
        s.out() << "heuristic suggestion (validate before use):\n";
        for (const auto& r : sug.r)
            s.out() << "  " << exponent_text(r, b) << '\n';
        for (const auto& n : sug.notes)
            s.out() << "note: " << n << '\n';
    }
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in)
{
    CLI::App app{"Formal Dulac-series solutions of analytic ODEs and their Gevrey order", "dulac"};
    app.require_subcommand(1);
    Options opt;

    auto common = [&](CLI::App* sub, bool input_required) {
        auto* in = sub->add_option("input", opt.input, "problem file (JSON), - for stdin");
        if (input_required)
            in->required();
        sub->add_option("--cutoff", opt.cutoff, "target Re(lambda) bound (exact decimal or p/q)");
        sub->add_option("--R", opt.R, "norm parameter R > 1");
        sub->add_option("--precision", opt.precision, "working precision in bits [64, 1024]");
        sub->add_option("--seed", opt.seed, "random seed");
        sub->add_option("--output-dir", opt.output_dir, "directory for output files");
        sub->add_option("--format", opt.format, "stdout format")->check(CLI::IsMember({"json", "csv", "text"}));
    };
    auto* solve = app.add_subcommand("solve", "extend the formal solution to the cutoff");
    auto* analyze = app.add_subcommand("analyze", "linearization, slope and condition report");
    auto* verify = app.add_subcommand("verify", "normalized coefficients, growth fit and verdict");
    auto* red = app.add_subcommand("reduce", "reduced equation after splitting off m terms");
    auto* iot = app.add_subcommand("iota", "multivariate image of the solution tail");
    auto* norms = app.add_subcommand("check-norms", "randomized checks of the norm estimates");
    auto* sug = app.add_subcommand("suggest-generators", "heuristic semigroup generators");
    for (auto* sub : {solve, analyze, verify, red, iot, sug})
        common(sub, true);
    common(norms, false);
    for (auto* sub : {red, iot})
        sub->add_option("--m", opt.m, "number of prefix terms split off (1-based)")->check(CLI::PositiveNumber);
    norms->add_option("--trials", opt.trials, "trials per generator set");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kOther;
    }

    CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    try {
        Session s(opt, out, err);
        bool have_input = !opt.input.empty();
        if (have_input)
            s.load(in);
        if (name == "solve")
            return cmd_solve(s);
        if (name == "analyze")
            return cmd_analyze(s);
        if (name == "verify")
            return cmd_verify(s);
        if (name == "reduce")
            return cmd_reduce(s);
        if (name == "iota")
            return cmd_iota(s);
        if (name == "check-norms")
            return cmd_check_norms(s, have_input);
        return cmd_suggest(s);
    } catch (const Error& e) {
        err << "error: " << name << ": " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << name << ": " << e.what() << '\n';
        return kOther;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    return run(args, out, err, std::cin);
}

} // namespace dulac::cli
