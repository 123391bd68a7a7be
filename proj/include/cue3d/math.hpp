#pragma once

#include <array>
#include <cmath>

namespace cue3d {

struct vec3 {
  double x = 0, y = 0, z = 0;

  vec3() = default;
  vec3(double x, double y, double z) : x(x), y(y), z(z) {}

  double& operator[](int i) { return (&x)[i]; }
  double operator[](int i) const { return (&x)[i]; }
};

inline vec3 operator+(const vec3& a, const vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline vec3 operator-(const vec3& a, const vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline vec3 operator-(const vec3& a) { return {-a.x, -a.y, -a.z}; }
inline vec3 operator*(const vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }
inline vec3 operator*(double s, const vec3& a) { return a * s; }
inline vec3 operator/(const vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
inline vec3& operator+=(vec3& a, const vec3& b) { a = a + b; return a; }
inline vec3& operator-=(vec3& a, const vec3& b) { a = a - b; return a; }
inline vec3& operator*=(vec3& a, double s) { a = a * s; return a; }
inline bool operator==(const vec3& a, const vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

inline double dot(const vec3& a, const vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline vec3 cross(const vec3& a, const vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double length_sq(const vec3& a) { return dot(a, a); }
inline double length(const vec3& a) { return std::sqrt(dot(a, a)); }
inline vec3 normalized(const vec3& a) {
  double l = length(a);
  return l > 0 ? a / l : vec3{0, 0, 0};
}
inline double distance(const vec3& a, const vec3& b) { return length(a - b); }
inline double distance_sq(const vec3& a, const vec3& b) { return length_sq(a - b); }
inline vec3 min(const vec3& a, const vec3& b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)};
}
inline vec3 max(const vec3& a, const vec3& b) {
  return {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)};
}

// Row-major 3x3 matrix.
struct mat3 {
  std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

  static mat3 identity() { return {}; }

  std::array<double, 3>& operator[](int r) { return m[r]; }
  const std::array<double, 3>& operator[](int r) const { return m[r]; }
};

inline vec3 operator*(const mat3& a, const vec3& v) {
  return {a[0][0] * v.x + a[0][1] * v.y + a[0][2] * v.z,
          a[1][0] * v.x + a[1][1] * v.y + a[1][2] * v.z,
          a[2][0] * v.x + a[2][1] * v.y + a[2][2] * v.z};
}

inline mat3 operator*(const mat3& a, const mat3& b) {
  mat3 r;
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++)
      r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return r;
}

inline mat3 transpose(const mat3& a) {
  mat3 r;
  for (int i = 0; i < 3; i++)
    for (int j = 0; j < 3; j++) r[i][j] = a[j][i];
  return r;
}

inline double det(const mat3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

inline mat3 rotation_x(double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  mat3 r;
  r.m = {{{1, 0, 0}, {0, c, -s}, {0, s, c}}};
  return r;
}

inline mat3 rotation_y(double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  mat3 r;
  r.m = {{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}};
  return r;
}

inline mat3 rotation_z(double angle) {
  double c = std::cos(angle), s = std::sin(angle);
  mat3 r;
  r.m = {{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}};
  return r;
}

// Rodrigues rotation about a unit axis.
inline mat3 rotation_axis_angle(const vec3& axis, double angle) {
  vec3 u = normalized(axis);
  double c = std::cos(angle), s = std::sin(angle), t = 1 - c;
  mat3 r;
  r.m = {{{c + u.x * u.x * t, u.x * u.y * t - u.z * s, u.x * u.z * t + u.y * s},
          {u.y * u.x * t + u.z * s, c + u.y * u.y * t, u.y * u.z * t - u.x * s},
          {u.z * u.x * t - u.y * s, u.z * u.y * t + u.x * s, c + u.z * u.z * t}}};
  return r;
}

// Rotation angle in radians from identity, via the trace.
inline double rotation_angle(const mat3& r) {
  double tr = r[0][0] + r[1][1] + r[2][2];
  double c = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c);
}

// Angle between two rotations: angle of a^T b.
inline double rotation_distance(const mat3& a, const mat3& b) {
  return rotation_angle(transpose(a) * b);
}

inline double angle_between(const vec3& a, const vec3& b) {
  double d = dot(normalized(a), normalized(b));
  return std::acos(std::clamp(d, -1.0, 1.0));
}

// Rigid transform p -> r*p + t.
struct rigid_transform {
  mat3 rotation;
  vec3 translation;

  vec3 apply(const vec3& p) const { return rotation * p + translation; }

  rigid_transform inverse() const {
    mat3 rt = transpose(rotation);
    return {rt, -(rt * translation)};
  }
};

// Composition: (a * b)(p) = a(b(p)).
inline rigid_transform operator*(const rigid_transform& a, const rigid_transform& b) {
  return {a.rotation * b.rotation, a.rotation * b.translation + a.translation};
}

constexpr double pi = 3.14159265358979323846;

inline double radians(double deg) { return deg * pi / 180.0; }
inline double degrees(double rad) { return rad * 180.0 / pi; }

}  // namespace cue3d
