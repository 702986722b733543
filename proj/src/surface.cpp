#include "piclat/surface.hpp"

#include "piclat/errors.hpp"
#include "piclat/json_io.hpp"
#include "piclat/monodromy.hpp"

#include <algorithm>
#include <sstream>

namespace piclat {

bool DivisorClass::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rational& r) { return r.is_zero(); });
}

DivisorClass DivisorClass::operator-() const {
    DivisorClass r = *this;
    for (Rational& c : r.coords)
        c = -c;
    return r;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
    if (coords.size() != o.coords.size())
        throw DimensionError("DivisorClass: rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i] += o.coords[i];
    return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
    if (coords.size() != o.coords.size())
        throw DimensionError("DivisorClass: rank mismatch");
    for (std::size_t i = 0; i < coords.size(); ++i)
        coords[i] -= o.coords[i];
    return *this;
}

DivisorClass operator*(const Rational& s, const DivisorClass& d) {
    DivisorClass r = d;
    for (Rational& c : r.coords)
        c *= s;
    return r;
}

std::string DivisorClass::str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < coords.size(); ++i)
        os << (i ? "," : "") << coords[i];
    os << ")";
    return os.str();
}

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<std::string> Report::failures() const {
    std::vector<std::string> f;
    for (const CheckResult& c : checks)
        if (!c.pass)
            f.push_back(c.name + (c.detail.empty() ? "" : ": " + c.detail));
    return f;
}

SurfaceModel SurfaceModel::load(const std::filesystem::path& file) {
    nlohmann::json j = load_json_file(file);
    const std::string ctx = file.filename().string();
    SurfaceModel m;
    try {
        for (const auto& n : j.at("basis"))
            m.basis_names_.push_back(n.get<std::string>());
        m.gram_matrix_ = json_rational_matrix(j.at("gram"), ctx + ".gram");
        m.canonical_ = DivisorClass(json_rational_vector(j.at("canonical"), ctx + ".canonical"));
        m.pic_basis_change_ =
            BasisChange{json_rational_matrix(j.at("pic_basis_change"), ctx + ".pic_basis_change")};
        for (const auto& f : j.at("fibers")) {
            FiberDescriptor d;
            d.label = f.at("label").get<std::string>();
            for (const auto& c : f.at("components"))
                d.components.push_back(c.get<std::string>());
            d.multiplicity = f.at("multiplicity").get<int>();
            d.kodaira_type = f.at("kodaira_type").get<std::string>();
            d.section_chain = f.value("section_chain", false);
            m.fibers_.push_back(std::move(d));
        }
        m.chi_structure_sheaf_ = j.at("chi_structure_sheaf").get<int>();
        m.c2_ = j.at("c2").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(ctx + ": " + e.what());
    }
    if (m.gram_matrix_.rows() != m.basis_names_.size() || !m.gram_matrix_.is_square())
        throw ParseError(ctx + ": gram rank does not match basis length");
    if (m.canonical_.size() != m.basis_names_.size())
        throw ParseError(ctx + ": canonical class length mismatch");
    if (m.pic_basis_change_.matrix.rows() != m.basis_names_.size() ||
        !m.pic_basis_change_.matrix.is_square())
        throw ParseError(ctx + ": pic_basis_change shape mismatch");
    return m;
}

bool SurfaceModel::has_basis_class(const std::string& name) const {
    return std::find(basis_names_.begin(), basis_names_.end(), name) != basis_names_.end();
}

DivisorClass SurfaceModel::basis_class(const std::string& name) const {
    auto it = std::find(basis_names_.begin(), basis_names_.end(), name);
    if (it == basis_names_.end())
        throw std::domain_error("unknown basis class \"" + name + "\"");
    DivisorClass d = DivisorClass::zero(rank());
    d.coords[static_cast<std::size_t>(it - basis_names_.begin())] = Rational(1);
    return d;
}

Rational SurfaceModel::pair(const DivisorClass& d1, const DivisorClass& d2) const {
    if (d1.size() != rank() || d2.size() != rank())
        throw DimensionError("pair: coordinate length mismatch");
    Rational s(0);
    for (std::size_t i = 0; i < rank(); ++i) {
        if (d1.coords[i].is_zero())
            continue;
        Rational row(0);
        for (std::size_t j = 0; j < rank(); ++j)
            if (!d2.coords[j].is_zero())
                row += gram_matrix_.at(i, j) * d2.coords[j];
        s += d1.coords[i] * row;
    }
    return s;
}

Rational SurfaceModel::k_degree(const DivisorClass& d) const { return pair(d, canonical_); }

Rational SurfaceModel::self_intersection(const DivisorClass& d) const { return pair(d, d); }

Rational SurfaceModel::omega_degree(const DivisorClass& d) const {
    return pair(d, d) + k_degree(d);
}

std::vector<Rational> SurfaceModel::pic_coordinates(const DivisorClass& d) const {
    return solve(pic_basis_change_.matrix, d.coords);
}

bool SurfaceModel::is_integral(const DivisorClass& d) const {
    std::vector<Rational> x = pic_coordinates(d);
    return std::all_of(x.begin(), x.end(), [](const Rational& r) { return r.is_integer(); });
}

DivisorClass SurfaceModel::fiber_class() const {
    std::vector<long> mults;
    for (const FiberDescriptor& f : fibers_)
        if (f.multiplicity >= 2)
            mults.push_back(f.multiplicity);
    Rational coef = canonical_formula(chi_structure_sheaf_, mults);
    if (coef.is_zero())
        throw std::domain_error("fiber_class: canonical class has no fiber expression");
    return (Rational(1) / coef) * canonical_;
}

Report SurfaceModel::validate() const {
    Report rep;
    auto check = [&](std::string name, bool ok, std::string detail = "") {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    bool symmetric = true;
    std::string where;
    for (std::size_t i = 0; i < rank() && symmetric; ++i)
        for (std::size_t j = i + 1; j < rank(); ++j)
            if (gram_matrix_.at(i, j) != gram_matrix_.at(j, i)) {
                symmetric = false;
                where = "(" + basis_names_[i] + "," + basis_names_[j] + ")";
                break;
            }
    check("gram symmetric", symmetric, symmetric ? "" : "entry pair " + where);

    check("canonical self-intersection 0", pair(canonical_, canonical_).is_zero(),
          "K.K = " + pair(canonical_, canonical_).str());
    check("chi(O) = 1", chi_structure_sheaf_ == 1,
          "chi(O) = " + std::to_string(chi_structure_sheaf_));

    bool nonsingular = true;
    if (det(pic_basis_change_.matrix).is_zero())
        nonsingular = false;
    check("pic basis change nonsingular", nonsingular);

    bool comps_ok = true;
    std::string missing;
    for (const FiberDescriptor& f : fibers_)
        for (const std::string& c : f.components)
            if (!has_basis_class(c)) {
                comps_ok = false;
                missing = f.label + " -> " + c;
            }
    check("fiber components in basis", comps_ok, missing);

    bool types_ok = true;
    std::string bad_type;
    std::vector<FiberConfigEntry> cfg;
    for (const FiberDescriptor& f : fibers_) {
        try {
            fiber_euler_number(f.kodaira_type);
            cfg.push_back({f.kodaira_type, f.multiplicity});
        } catch (const std::domain_error&) {
            types_ok = false;
            bad_type = f.label + ": " + f.kodaira_type;
        }
    }
    check("kodaira types supported", types_ok, bad_type);

    bool mult_ok = true;
    for (const FiberDescriptor& f : fibers_)
        if (f.multiplicity < 1 || (f.multiplicity >= 2 && f.kodaira_type != "smooth"))
            mult_ok = false;
    check("multiple fibers smooth", mult_ok);

    if (types_ok)
        check("euler numbers sum to c2", euler_check(cfg, c2_));

    if (rep.all_pass()) {
        Report fib = fiber_consistency_suite();
        rep.checks.insert(rep.checks.end(), fib.checks.begin(), fib.checks.end());
    }
    return rep;
}

Report SurfaceModel::fiber_consistency_suite() const {
    Report rep;
    auto check = [&](std::string name, bool ok, std::string detail = "") {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    const DivisorClass fiber = fiber_class(); // 6K on the bundled model
    check("fiber self-intersection 0", pair(fiber, fiber).is_zero(),
          pair(fiber, fiber).str());

    // the multisection: the unique basis class of positive K-degree
    std::size_t section = rank();
    for (std::size_t i = 0; i < rank(); ++i)
        if (k_degree(basis_class(basis_names_[i])).is_positive()) {
            if (section == rank())
                section = i;
            else
                section = rank() + 1;
        }
    if (section >= rank()) {
        check("unique multisection class", false, "no unique basis class with positive K-degree");
        return rep;
    }
    const DivisorClass sec = basis_class(basis_names_[section]);
    const Rational sec_fiber_degree = pair(fiber, sec);
    check("fiber . multisection = 6", sec_fiber_degree == Rational(6), sec_fiber_degree.str());

    for (const FiberDescriptor& f : fibers_) {
        if (f.kodaira_type != "I3")
            continue;
        if (f.components.size() != 2) {
            check(f.label + ": two listed components", false);
            continue;
        }
        DivisorClass c1 = basis_class(f.components[0]);
        DivisorClass c2 = basis_class(f.components[1]);
        DivisorClass c3 = fiber - c1 - c2;
        const DivisorClass comps[3] = {c1, c2, c3};
        const std::string names[3] = {f.components[0], f.components[1],
                                      f.label + "-" + f.components[0] + "-" + f.components[1]};
        for (int i = 0; i < 3; ++i) {
            check(f.label + ": " + names[i] + "^2 = -2", pair(comps[i], comps[i]) == Rational(-2),
                  pair(comps[i], comps[i]).str());
            check(f.label + ": K." + names[i] + " = 0", k_degree(comps[i]).is_zero(),
                  k_degree(comps[i]).str());
            check(f.label + ": fiber." + names[i] + " = 0", pair(fiber, comps[i]).is_zero(),
                  pair(fiber, comps[i]).str());
        }
        for (int i = 0; i < 3; ++i) {
            int jn = (i + 1) % 3;
            check(f.label + ": " + names[i] + "." + names[jn] + " = 1",
                  pair(comps[i], comps[jn]) == Rational(1), pair(comps[i], comps[jn]).str());
        }
        Rational total = pair(comps[0], sec) + pair(comps[1], sec) + pair(comps[2], sec);
        check(f.label + ": multisection degree sums to 6", total == Rational(6), total.str());
        if (f.section_chain) {
            // the fiber met along the exceptional chain: degrees 0, 1, 5
            std::vector<Rational> degs = {pair(comps[0], sec), pair(comps[1], sec),
                                          pair(comps[2], sec)};
            std::sort(degs.begin(), degs.end());
            bool profile = degs[0] == Rational(0) && degs[1] == Rational(1) && degs[2] == Rational(5);
            check(f.label + ": chain profile (0,1,5)", profile,
                  degs[0].str() + "," + degs[1].str() + "," + degs[2].str());
        } else {
            for (int i = 0; i < 3; ++i)
                check(f.label + ": " + names[i] + ".multisection = 2",
                      pair(comps[i], sec) == Rational(2), pair(comps[i], sec).str());
        }
    }
    return rep;
}

} // namespace piclat
