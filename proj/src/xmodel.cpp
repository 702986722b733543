#include "piclat/xmodel.hpp"

#include "piclat/errors.hpp"
#include "piclat/json_io.hpp"
#include "piclat/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace piclat {

XClass XClass::operator-() const {
    XClass r = *this;
    for (Rational& c : r.coords)
        c = -c;
    return r;
}

XClass& XClass::operator+=(const XClass& o) {
    if (coords.size() != o.coords.size())
        throw DimensionError("XClass: rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i] += o.coords[i];
    return *this;
}

XClass& XClass::operator-=(const XClass& o) {
    if (coords.size() != o.coords.size())
        throw DimensionError("XClass: rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i] -= o.coords[i];
    return *this;
}

XClass operator*(const Rational& s, const XClass& d) {
    XClass r = d;
    for (Rational& c : r.coords)
        c *= s;
    return r;
}

std::string XClass::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords.size(); ++i)
        os << (i ? "," : "") << coords[i];
    os << ")";
    return os.str();
}

XModel XModel::load(const std::filesystem::path& file) {
    nlohmann::json j = load_json_file(file);
    const std::string ctx = file.filename().string();
    XModel m;
    try {
        for (const auto& n : j.at("basis"))
            m.basis_.push_back(n.get<std::string>());
        for (const auto& [name, coords] : j.at("classes").items())
            m.classes_.emplace_back(name,
                                    json_rational_vector(coords, ctx + ".classes." + name));
        for (const auto& p : j.at("contracted_pairs"))
            m.contracted_pairs_.emplace_back(p.at(0).get<std::string>(),
                                             p.at(1).get<std::string>());
        for (const auto& n : j.at("table_classes"))
            m.table_classes_.push_back(n.get<std::string>());
        for (const auto& t : j.at("branch_divisor"))
            m.branch_divisor_.emplace_back(
                json_rational(t.at(0), ctx + ".branch_divisor"), t.at(1).get<std::string>());
        for (const auto& n : j.at("fiber_components"))
            m.fiber_components_.push_back(n.get<std::string>());
        m.fiber_name_ = j.at("fiber").get<std::string>();
        m.covering_degree_ = j.at("covering_degree").get<long>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(ctx + ": " + e.what());
    }
    for (const auto& [name, coords] : m.classes_)
        if (coords.size() != m.basis_.size())
            throw ParseError(ctx + ": class " + name + " has wrong length");
    auto require = [&](const std::string& n) {
        if (!m.has_class(n))
            throw ParseError(ctx + ": missing class \"" + n + "\"");
    };
    for (const auto& [a, b] : m.contracted_pairs_) {
        require(a);
        require(b);
    }
    for (const auto& n : m.table_classes_)
        require(n);
    for (const auto& [c, n] : m.branch_divisor_)
        require(n);
    for (const auto& n : m.fiber_components_)
        require(n);
    require(m.fiber_name_);
    return m;
}

bool XModel::has_class(const std::string& name) const {
    return std::any_of(classes_.begin(), classes_.end(),
                       [&](const auto& p) { return p.first == name; });
}

XClass XModel::cls(const std::string& name) const {
    for (const auto& [n, coords] : classes_)
        if (n == name)
            return XClass(coords);
    throw std::domain_error("XModel: unknown class \"" + name + "\"");
}

Rational XModel::x_pair(const XClass& a, const XClass& b) const {
    if (a.coords.size() != basis_.size() || b.coords.size() != basis_.size())
        throw DimensionError("x_pair: coordinate length mismatch");
    // diag(1, -1, ..., -1)
    Rational s = a.coords[0] * b.coords[0];
    for (std::size_t i = 1; i < basis_.size(); ++i)
        s -= a.coords[i] * b.coords[i];
    return s;
}

std::vector<XClass> XModel::contracted_classes() const {
    std::vector<XClass> cs;
    for (const auto& [a, b] : contracted_pairs_) {
        cs.push_back(cls(a));
        cs.push_back(cls(b));
    }
    return cs;
}

XClass XModel::phi_trivial_lift(const XClass& z) const {
    const std::vector<XClass> cs = contracted_classes();
    const std::size_t k = cs.size();
    // q solves  Gram(contracted) . q = -(z . c_i); the contracted Gram is a
    // sum of negative-definite chain blocks, always nonsingular.
    RatMatrix g(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            g.at(i, j) = x_pair(cs[i], cs[j]);
    std::vector<Rational> rhs(k);
    for (std::size_t i = 0; i < k; ++i)
        rhs[i] = -x_pair(z, cs[i]);
    std::vector<Rational> q = solve(g, rhs);
    XClass out = z;
    for (std::size_t i = 0; i < k; ++i)
        out += q[i] * cs[i];
    return out;
}

Rational XModel::y_pairing(const XClass& z1, const XClass& z2) const {
    return Rational(covering_degree_) * x_pair(phi_trivial_lift(z1), phi_trivial_lift(z2));
}

std::vector<XModel::TableEntry> XModel::derive_table(const SurfaceModel& y) const {
    std::vector<TableEntry> out;
    for (std::size_t i = 0; i < table_classes_.size(); ++i)
        for (std::size_t j = i; j < table_classes_.size(); ++j) {
            TableEntry e;
            e.a = table_classes_[i];
            e.b = table_classes_[j];
            e.derived = y_pairing(cls(e.a), cls(e.b));
            e.expected = y.pair(y.basis_class(e.a), y.basis_class(e.b));
            e.match = e.derived == e.expected;
            out.push_back(std::move(e));
        }
    return out;
}

XModel::Div3Certificate XModel::div3_certificate() const {
    Div3Certificate cert;
    XClass d(std::vector<Rational>(basis_.size()));
    for (const auto& [coef, name] : branch_divisor_)
        d += coef * cls(name);
    cert.divisor = d;
    cert.divisible = true;
    for (const Rational& c : d.coords) {
        if (!c.is_integer() || c.to_integer() % 3 != 0) {
            cert.divisible = false;
            break;
        }
    }
    if (cert.divisible)
        cert.witness = Rational(1, 3) * d;
    return cert;
}

XClass XModel::fiber_component_sum() const {
    XClass s(std::vector<Rational>(basis_.size()));
    for (const std::string& n : fiber_components_)
        s += cls(n);
    return s;
}

} // namespace piclat
