#pragma once

// The ground field C (completed perfection of F_p((t))) and the residue field
// C(y) of the Type III point given by the disk of additive radius gammaX.

#include <optional>
#include <span>
#include <vector>

#include "hahn/series.hpp"

namespace hahn {

class GroundField {
 public:
  explicit GroundField(unsigned p);

  unsigned prime() const { return p_; }
  const ProfilePtr& profile() const { return profile_; }

  TruncatedSeries uniformizer() const;
  /// c * t^a.
  TruncatedSeries monomial(Coeff c, const Rat& a) const;

  /// True iff v lies in the value group Z[1/p] of C.
  bool valueInGroundGroup(const Rat& v) const { return isInZp(v, p_); }

 private:
  unsigned p_;
  ProfilePtr profile_;
};

class ResidueField {
 public:
  /// gammaX must be positive and outside Z[1/p].
  ResidueField(GroundField base, Rat gammaX);

  const GroundField& base() const { return base_; }
  unsigned prime() const { return base_.prime(); }
  const Rat& gammaX() const { return gammaX_; }
  const ProfilePtr& profile() const { return profile_; }

  /// The class of the coordinate x (valuation gammaX).
  TruncatedSeries x() const;
  /// c * t^a * x^q.
  TruncatedSeries monomial(Coeff c, const Rat& a, const Rat& q) const;
  TruncatedSeries embedGround(const TruncatedSeries& a) const;

  Rat weight(const Rat& a, const Rat& q) const { return a + q * gammaX_; }

 private:
  GroundField base_;
  Rat gammaX_;
  ProfilePtr profile_;
};

enum class PointType { TypeI, TypeII, TypeIII };

const char* pointTypeName(PointType t);

/// Additive radius value -log r; nullopt is the radius-0 point sentinel.
using RadiusValue = std::optional<Rat>;

/// Berkovich type of the disk with the given center and radius values.
/// The center is only validated (one integral ground element per radius).
PointType classifyDiskPoint(const GroundField& field, std::span<const TruncatedSeries> center,
                            std::span<const RadiusValue> radii);

struct CChoice {
  TruncatedSeries c;
  Rat valuation;
  /// valuation - gammaX, certified to lie in (0, vS).
  Rat margin;
};

/// c = t^v with v the simplest Z[1/p] point of (gammaX, gammaX + vS), so that
/// s < |c x^-1| < 1.
CChoice chooseC(const GroundField& field, const Rat& gammaX, const Rat& vS);

}  // namespace hahn
