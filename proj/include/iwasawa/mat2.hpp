#pragma once

#include <utility>

namespace iwa {

template <class T>
struct Vec2 {
  T x, y;

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
};

/// [[a, b], [c, d]]
template <class T>
struct Mat2 {
  T a, b, c, d;

  Vec2<T> apply(const Vec2<T>& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  T det() const { return a * d - b * c; }
  Mat2 adj() const { return {d, -b, -c, a}; }

  friend Mat2 operator*(const Mat2& l, const Mat2& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
  }
  friend Mat2 operator+(const Mat2& l, const Mat2& r) { return {l.a + r.a, l.b + r.b, l.c + r.c, l.d + r.d}; }
  friend Mat2 operator-(const Mat2& l, const Mat2& r) { return {l.a - r.a, l.b - r.b, l.c - r.c, l.d - r.d}; }
  friend bool operator==(const Mat2& l, const Mat2& r) {
    return l.a == r.a && l.b == r.b && l.c == r.c && l.d == r.d;
  }

  template <class F>
  Mat2 map(F f) const {
    return {f(a), f(b), f(c), f(d)};
  }
  template <class F>
  bool all_of(F f) const {
    return f(a) && f(b) && f(c) && f(d);
  }
};

}  // namespace iwa
