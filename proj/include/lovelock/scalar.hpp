#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <algorithm>

namespace lovelock {

using Rational = mpq_class;

struct ModeError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/// Exact rational or IEEE double. A single computation never mixes the two:
/// every binary operation checks the mode tags and throws ModeError on a
/// mismatch. Float mode exists only for runs whose kappa has no rational
/// representative.
class Scalar
{
  public:
	enum class Mode : uint8_t { Exact, Float };

	Scalar() : mode_(Mode::Exact), q_(0), f_(0) {}
	explicit Scalar(Rational q) : mode_(Mode::Exact), q_(std::move(q)), f_(0)
	{
		q_.canonicalize();
	}
	Scalar(long num, long den) : mode_(Mode::Exact), q_(num, den), f_(0)
	{
		q_.canonicalize();
	}
	static Scalar exact(long v) { return Scalar(Rational(v)); }
	static Scalar flt(double v)
	{
		Scalar s;
		s.mode_ = Mode::Float;
		s.f_ = v;
		return s;
	}
	static Scalar zero(Mode m) { return m == Mode::Exact ? Scalar() : flt(0.0); }
	static Scalar one(Mode m) { return m == Mode::Exact ? exact(1) : flt(1.0); }

	Mode mode() const { return mode_; }
	bool exact_mode() const { return mode_ == Mode::Exact; }
	const Rational &rat() const
	{
		require(Mode::Exact);
		return q_;
	}
	double fval() const
	{
		require(Mode::Float);
		return f_;
	}
	double to_double() const { return exact_mode() ? q_.get_d() : f_; }

	bool is_zero() const { return exact_mode() ? sgn(q_) == 0 : f_ == 0.0; }
	bool is_one() const
	{
		return exact_mode() ? q_ == 1 : f_ == 1.0;
	}
	int sign() const { return exact_mode() ? sgn(q_) : (f_ > 0) - (f_ < 0); }

	friend Scalar operator+(const Scalar &a, const Scalar &b)
	{
		a.require(b.mode_);
		return a.exact_mode() ? Scalar(Rational(a.q_ + b.q_)) : flt(a.f_ + b.f_);
	}
	friend Scalar operator-(const Scalar &a, const Scalar &b)
	{
		a.require(b.mode_);
		return a.exact_mode() ? Scalar(Rational(a.q_ - b.q_)) : flt(a.f_ - b.f_);
	}
	friend Scalar operator*(const Scalar &a, const Scalar &b)
	{
		a.require(b.mode_);
		return a.exact_mode() ? Scalar(Rational(a.q_ * b.q_)) : flt(a.f_ * b.f_);
	}
	friend Scalar operator-(const Scalar &a)
	{
		return a.exact_mode() ? Scalar(Rational(-a.q_)) : flt(-a.f_);
	}
	Scalar &operator+=(const Scalar &b)
	{
		require(b.mode_);
		if (exact_mode())
			q_ += b.q_;
		else
			f_ += b.f_;
		return *this;
	}
	Scalar &operator-=(const Scalar &b)
	{
		require(b.mode_);
		if (exact_mode())
			q_ -= b.q_;
		else
			f_ -= b.f_;
		return *this;
	}
	Scalar &operator*=(const Scalar &b)
	{
		require(b.mode_);
		if (exact_mode())
			q_ *= b.q_;
		else
			f_ *= b.f_;
		return *this;
	}

	Scalar inv() const
	{
		if (is_zero())
			throw std::domain_error("Scalar::inv: division by zero");
		return exact_mode() ? Scalar(Rational(1) / q_) : flt(1.0 / f_);
	}

	friend bool operator==(const Scalar &a, const Scalar &b)
	{
		a.require(b.mode_);
		return a.exact_mode() ? a.q_ == b.q_ : a.f_ == b.f_;
	}
	friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

	/// exact mode: identical; float mode: within a small absolute/relative slack
	bool near(const Scalar &b, double tol = 1e-9) const
	{
		require(b.mode_);
		if (exact_mode())
			return q_ == b.q_;
		double d = f_ - b.f_;
		double scale = std::max({1.0, f_ < 0 ? -f_ : f_, b.f_ < 0 ? -b.f_ : b.f_});
		return (d < 0 ? -d : d) <= tol * scale;
	}

	/// canonical "p/q" (or plain "p" for integers), "-" on the numerator
	std::string str() const
	{
		if (exact_mode())
			return q_.get_str();
		return std::to_string(f_);
	}

  private:
	void require(Mode m) const
	{
		if (mode_ != m)
			throw ModeError("exact/float mode mixed in one computation");
	}

	Mode mode_;
	Rational q_;
	double f_;
};

inline Scalar operator*(const Rational &a, const Scalar &b)
{
	return Scalar(a) * b;
}

/// factorial / falling factorial over the rationals (exact helpers used by
/// the coupling coefficient tables)
inline Rational factorial_q(long k)
{
	Rational r = 1;
	for (long i = 2; i <= k; ++i)
		r *= i;
	return r;
}

/// s(s-1)...(s-j+1), j >= 0 factors; j = 0 gives 1
inline Rational falling_q(long s, long j)
{
	Rational r = 1;
	for (long i = 0; i < j; ++i)
		r *= (s - i);
	return r;
}

} // namespace lovelock
