#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace potrec {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Counterclockwise rotation by 90 degrees.
constexpr Vec2 rotate90(Vec2 v) { return {-v.y, v.x}; }

/// Complex 2-vector. Products with real or complex vectors are bilinear (no conjugation).
struct CVec2 {
    cplx x;
    cplx y;

    CVec2 operator+(const CVec2& o) const { return {x + o.x, y + o.y}; }
    CVec2 operator-(const CVec2& o) const { return {x - o.x, y - o.y}; }
};

inline cplx dot(const CVec2& a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline cplx dot(const CVec2& a, const CVec2& b) { return a.x * b.x + a.y * b.y; }

enum class ErrorKind { Config, Domain, Geometry, Degenerate, Solver, Coverage };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};
struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
struct GeometryError : Error {
    explicit GeometryError(const std::string& w) : Error(ErrorKind::Geometry, w) {}
};
struct DegenerateError : Error {
    explicit DegenerateError(const std::string& w) : Error(ErrorKind::Degenerate, w) {}
};
struct SolverError : Error {
    explicit SolverError(const std::string& w) : Error(ErrorKind::Solver, w) {}
};
struct CoverageError : Error {
    explicit CoverageError(const std::string& w) : Error(ErrorKind::Coverage, w) {}
};

}  // namespace potrec
