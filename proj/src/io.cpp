#include "abreu/io.hpp"

#include "abreu/calculus.hpp"
#include "abreu/errors.hpp"
#include "abreu/parallel.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace abreu {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw input_error("bad JSON in '" + path + "': " + e.what());
    }
    return j;
}

ordered_json polygon_to_json(const Polygon& poly) {
    ordered_json j;
    ordered_json verts = ordered_json::array();
    for (const Vec2& v : poly.vertices()) verts.push_back({v.x, v.y});
    j["vertices"] = verts;
    j["sigma"] = poly.sigma();
    j["base_point"] = {poly.base_point().x, poly.base_point().y};
    return j;
}

Polygon polygon_from_json(const ordered_json& j) {
    try {
        std::vector<Vec2> verts;
        for (const auto& v : j.at("vertices"))
            verts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        std::vector<double> sigma = j.at("sigma").get<std::vector<double>>();
        const auto& bp = j.at("base_point");
        return Polygon(std::move(verts), std::move(sigma),
                       {bp.at(0).get<double>(), bp.at(1).get<double>()});
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("polygon file malformed: ") + e.what());
    }
}

} // namespace

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path dir = target.has_parent_path() ? target.parent_path() : fs::path(".");
    const fs::path tmp = dir / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw input_error("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.good()) throw input_error("short write to '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

Polygon load_polygon(const std::string& path) { return polygon_from_json(read_json(path)); }

void save_polygon(const Polygon& poly, const std::string& path) {
    atomic_write(path, polygon_to_json(poly).dump(2) + "\n");
}

SolutionFile load_solution(const std::string& path) {
    const ordered_json j = read_json(path);
    try {
        Polygon poly = polygon_from_json(j.at("polygon"));
        const int degree = j.at("correction_degree").get<int>();
        std::vector<double> coeffs = j.at("coefficients").get<std::vector<double>>();
        AffineShift shift;
        const auto& sh = j.at("affine_shift");
        shift.c = sh.at(0).get<double>();
        shift.g = {sh.at(1).get<double>(), sh.at(2).get<double>()};
        SymplecticPotential pot =
            SymplecticPotential::with_correction(poly, degree, std::move(coeffs), shift);

        const auto& meta = j.at("solver");
        SolutionFile out{std::move(pot), parse_scalar_field(meta.at("A").get<std::string>())};
        out.residual_rms = meta.at("residual_rms").get<double>();
        out.residual_max = meta.at("residual_max").get<double>();
        out.iterations = meta.at("iterations").get<int>();
        out.functional_value = meta.at("functional").get<double>();
        out.converged = meta.at("converged").get<bool>();
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("solution file malformed: ") + e.what());
    }
}

void save_solution(const SolutionFile& sol, const std::string& path) {
    ordered_json j;
    j["polygon"] = polygon_to_json(sol.potential.polygon());
    j["correction_degree"] = sol.potential.correction_degree();
    j["coefficients"] = sol.potential.coefficients();
    const auto& sh = sol.potential.affine_shift();
    j["affine_shift"] = {sh.c, sh.g.x, sh.g.y};
    ordered_json meta;
    meta["A"] = sol.A.repr;
    meta["residual_rms"] = sol.residual_rms;
    meta["residual_max"] = sol.residual_max;
    meta["iterations"] = sol.iterations;
    meta["functional"] = sol.functional_value;
    meta["converged"] = sol.converged;
    j["solver"] = meta;
    atomic_write(path, j.dump(2) + "\n");
}

void save_report(const VerificationReport& report, const std::string& path) {
    ordered_json j;
    j["all_pass"] = report.all_pass();
    ordered_json checks = ordered_json::array();
    for (const CheckRecord& c : report.checks) {
        ordered_json e;
        e["id"] = c.id;
        e["description"] = c.description;
        e["lhs"] = c.lhs;
        e["rhs"] = c.rhs;
        e["margin"] = c.margin;
        e["pass"] = c.pass;
        e["report_only"] = c.report_only;
        if (!c.meta.empty()) e["meta"] = c.meta;
        checks.push_back(e);
    }
    j["checks"] = checks;
    atomic_write(path, j.dump(2) + "\n");
}

void emit_grid_csv(const SymplecticPotential& pot, int n, const std::string& path) {
    if (n < 1) throw input_error("grid size must be positive");
    const std::vector<Vec2> pts = interior_grid(pot.polygon(), n, pot.d_min());
    std::vector<std::string> rows(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const Vec2& p = pts[i];
        const PointState st = hessian_package(pot.jet(p));
        const CurvaturePack cp = curvature_tensors(st);
        const double d = pot.polygon().boundary_distance(p);
        char buf[512];
        std::snprintf(buf, sizeof(buf),
                      "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,"
                      "%.12g,%.12g,%.12g,%.12g,%.12g\n",
                      p.x, p.y, d, st.jet.value, st.jet.grad.x, st.jet.grad.y, st.jet.hess.xx,
                      st.jet.hess.xy, st.jet.hess.yy, st.det_hess, st.L, st.S, st.v.x, st.v.y,
                      cp.normF2, cp.normG2);
        rows[i] = buf;
    });
    std::ostringstream out;
    out << "x,y,d,u,ux,uy,uxx,uxy,uyy,detH,L,S,v1,v2,normF2,normG2\n";
    for (const std::string& r : rows) out << r;
    atomic_write(path, out.str());
}

} // namespace abreu
