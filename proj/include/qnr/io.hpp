#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qnr/matrix.hpp"
#include "qnr/numrange.hpp"
#include "qnr/sdp.hpp"

namespace qnr {

using json = nlohmann::json;

/// Quaternion-matrix file format shared by every tool:
///   {"rows": m, "cols": n, "entries": [[w,x,y,z], ...]}   (row-major)
/// Parsers reject NaN/Inf components and any length mismatch.
inline json quat_matrix_to_json(const QuatMatrix& a) {
    json entries = json::array();
    for (const Quaternion& q : a.data()) entries.push_back({q.w, q.x, q.y, q.z});
    return json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

inline QuatMatrix quat_matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw std::runtime_error("matrix json: need object with rows, cols, entries");
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
        throw std::runtime_error("matrix json: rows/cols must be nonnegative integers");
    const std::size_t rows = j["rows"].get<std::size_t>();
    const std::size_t cols = j["cols"].get<std::size_t>();
    if (rows == 0 || cols == 0) throw std::runtime_error("matrix json: empty shape");
    const json& entries = j["entries"];
    if (!entries.is_array() || entries.size() != rows * cols)
        throw std::runtime_error("matrix json: entries length must equal rows*cols");
    QuatMatrix a(rows, cols);
    for (std::size_t t = 0; t < entries.size(); ++t) {
        const json& e = entries[t];
        if (!e.is_array() || e.size() != 4)
            throw std::runtime_error("matrix json: each entry must be a 4-array [w,x,y,z]");
        Quaternion q;
        double* comp[4] = {&q.w, &q.x, &q.y, &q.z};
        for (int l = 0; l < 4; ++l) {
            if (!e[l].is_number())
                throw std::runtime_error("matrix json: entry components must be numbers");
            *comp[l] = e[l].get<double>();
        }
        if (!q.is_finite()) throw std::runtime_error("matrix json: NaN/Inf entry rejected");
        a.data()[t] = q;
    }
    return a;
}

inline QuatMatrix read_quat_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("matrix file " + path + ": " + e.what());
    }
    return quat_matrix_from_json(j);
}

inline void write_quat_matrix(const std::string& path, const QuatMatrix& a) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write matrix file: " + path);
    out << quat_matrix_to_json(a).dump(2) << "\n";
}

/// Complex view of a quaternion matrix; nonzero j/k parts are an error.
inline ComplexMatrix as_complex(const QuatMatrix& a) {
    ComplexMatrix c(a.rows(), a.cols());
    for (std::size_t t = 0; t < a.data().size(); ++t) {
        const Quaternion& q = a.data()[t];
        if (q.y != 0.0 || q.z != 0.0)
            throw std::runtime_error("matrix has nonzero j/k parts; a complex matrix is required");
        c.data()[t] = {q.w, q.x};
    }
    return c;
}

inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for digest: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a_hex(ss.str());
}

/// Floats in CSV output carry 17 significant digits.
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_samples_csv(const std::string& path, const std::vector<Quaternion>& pts) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write csv: " + path);
    out << "w,x,y,z\n";
    for (const Quaternion& q : pts)
        out << fmt17(q.w) << "," << fmt17(q.x) << "," << fmt17(q.y) << "," << fmt17(q.z) << "\n";
}

inline void write_slabs_csv(const std::string& path, const std::vector<SupportSlab>& slabs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write csv: " + path);
    out << "t1,t2,t3,t4,lo,hi\n";
    for (const SupportSlab& s : slabs)
        out << fmt17(s.t[0]) << "," << fmt17(s.t[1]) << "," << fmt17(s.t[2]) << ","
            << fmt17(s.t[3]) << "," << fmt17(s.lo) << "," << fmt17(s.hi) << "\n";
}

inline void write_prange_samples_csv(const std::string& path,
                                     const std::vector<std::complex<double>>& pts) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write csv: " + path);
    out << "re,im\n";
    for (const auto& z : pts) out << fmt17(z.real()) << "," << fmt17(z.imag()) << "\n";
}

struct ThetaSlab {
    double theta;
    double lo;
    double hi;
};

inline void write_theta_slabs_csv(const std::string& path, const std::vector<ThetaSlab>& slabs) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write csv: " + path);
    out << "theta,lo,hi\n";
    for (const ThetaSlab& s : slabs)
        out << fmt17(s.theta) << "," << fmt17(s.lo) << "," << fmt17(s.hi) << "\n";
}

inline json real_matrix_to_json(const RealMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RealMatrix real_matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::runtime_error("matrix json: need nested arrays");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    RealMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw std::runtime_error("matrix json: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<double>();
    }
    return m;
}

/// SDP problems and solutions serialize to JSON for audit and replay.
inline json sdp_problem_to_json(const SdpProblem& p) {
    json xs = json::array();
    for (const auto& x : p.xs) xs.push_back(real_matrix_to_json(x));
    return json{{"order", p.order()},
                {"num_vars", p.num_vars()},
                {"c", p.c},
                {"x0", real_matrix_to_json(p.x0)},
                {"xs", std::move(xs)},
                {"metadata", json{{"origin", p.origin}, {"embed_scale", p.embed_scale}}}};
}

inline SdpProblem sdp_problem_from_json(const json& j) {
    SdpProblem p;
    p.x0 = real_matrix_from_json(j.at("x0"));
    for (const auto& x : j.at("xs")) p.xs.push_back(real_matrix_from_json(x));
    p.c = j.at("c").get<std::vector<double>>();
    const auto& meta = j.at("metadata");
    p.origin = meta.at("origin").get<std::string>();
    p.embed_scale = meta.at("embed_scale").get<double>();
    p.validate();
    return p;
}

inline json sdp_solution_to_json(const SdpSolution& s) {
    return json{{"s_star", s.s_star},
                {"value", s.value},
                {"dual_value", s.dual_value},
                {"gap", s.gap},
                {"iterations", s.iterations},
                {"dual_residual", s.dual_residual},
                {"primal_min_eig", s.primal_min_eig},
                {"dual_min_eig", s.dual_min_eig},
                {"mu_final", s.mu_final},
                {"dual_matrix", real_matrix_to_json(s.dual_matrix)}};
}

} // namespace qnr
