#include "dulac/scalar.hpp"

#include "dulac/error.hpp"

#include <cctype>
#include <ostream>
#include <regex>

namespace dulac {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::Basis: return "BasisMismatch";
    case ErrorKind::UndecidableComparison: return "UndecidableComparison";
    case ErrorKind::InexactExponent: return "InexactExponent";
    case ErrorKind::CutoffIncrease: return "CutoffIncrease";
    case ErrorKind::NonpositiveValuation: return "NonpositiveValuation";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::AllDerivativesVanish: return "AllDerivativesVanish";
    case ErrorKind::IndeterminateRoot: return "IndeterminateRoot";
    case ErrorKind::Resonance: return "Resonance";
    case ErrorKind::NonProgressingResidual: return "NonProgressingResidual";
    case ErrorKind::LinearDataDrift: return "LinearDataDrift";
    case ErrorKind::SlopeUndetermined: return "SlopeUndetermined";
    case ErrorKind::DependentGenerators: return "DependentGenerators";
    case ErrorKind::NonpositiveRealPart: return "NonpositiveRealPart";
    case ErrorKind::ExponentOutsideSemigroup: return "ExponentOutsideSemigroup";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    }
    return "Error";
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o)
{
    if (o.is_real()) {
        re_ *= o.re_;
        im_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o)
{
    if (o.is_zero())
        fail(ErrorKind::Domain, "division by zero scalar");
    if (o.is_real()) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    Rational d = o.norm2();
    *this *= o.conj();
    re_ /= d;
    im_ /= d;
    return *this;
}

std::string ExactScalar::str() const
{
    if (is_real())
        return re_.get_str();
    std::string out = re_.get_str();
    if (sgn(im_) > 0)
        out += '+';
    out += im_.get_str();
    out += 'i';
    return out;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& s)
{
    return os << s.str();
}

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    if (!s.empty() && s.front() == '+')
        s.erase(0, 1);
    bool digit_seen = false;
    std::size_t slashes = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        char c = s[k];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digit_seen = true;
        } else if (c == '/') {
            ++slashes;
        } else if (c == '-' && k == 0) {
        } else {
            fail(ErrorKind::Parse, "invalid rational literal '" + std::string(text) + "'");
        }
    }
    if (!digit_seen || slashes > 1 || s.back() == '/' || s.find("/-") != std::string::npos)
        fail(ErrorKind::Parse, "invalid rational literal '" + std::string(text) + "'");
    Rational q;
    if (q.set_str(s, 10) != 0)
        fail(ErrorKind::Parse, "invalid rational literal '" + std::string(text) + "'");
    if (sgn(q.get_den()) == 0)
        fail(ErrorKind::Parse, "zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

Rational parse_decimal_rational(std::string_view text)
{
    static const std::regex decimal(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
    std::string s(text);
    std::smatch m;
    if (s.find('/') != std::string::npos || !std::regex_match(s, m, decimal))
        return parse_rational(text);
    std::string whole = m[2].str(), frac = m[3].str();
    if (whole.empty() && frac.empty())
        fail(ErrorKind::Parse, "invalid decimal literal '" + s + "'");
    long exp10 = m[4].matched ? std::stol(m[4].str()) : 0;
    if (exp10 > 4096 || exp10 < -4096)
        fail(ErrorKind::Parse, "decimal exponent out of range in '" + s + "'");
    exp10 -= static_cast<long>(frac.size());
    mpz_class num(whole + frac == "" ? "0" : whole + frac, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    Rational q = exp10 < 0 ? Rational(num, scale) : Rational(num * scale);
    q.canonicalize();
    return m[1].str() == "-" ? Rational(-q) : q;
}

std::pair<std::string, std::string> split_complex_literal(std::string_view text)
{
    if (text.empty())
        fail(ErrorKind::Parse, "empty scalar literal");
    if (text.back() != 'i')
        return {std::string(text), "0"};

    std::string_view body = text.substr(0, text.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        // skip the sign of a decimal exponent such as 1e-5
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    auto imag_part = [](std::string_view s) -> std::string {
        if (s.empty() || s == "+")
            return "1";
        if (s == "-")
            return "-1";
        return std::string(s);
    };
    if (split == std::string_view::npos)
        return {"0", imag_part(body)};
    return {std::string(body.substr(0, split)), imag_part(body.substr(split))};
}

ExactScalar ExactScalar::parse(std::string_view text)
{
    auto [re, im] = split_complex_literal(text);
    return {parse_rational(re), parse_rational(im)};
}

} // namespace dulac
