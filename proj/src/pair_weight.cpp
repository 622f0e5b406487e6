#include "multcalc/pair_weight.hpp"

#include <sstream>

namespace multcalc {

PairWeightFamily PairWeightFamily::custom_table(std::array<int, 6> l, std::array<int, 6> h,
                                                std::vector<int> domain) {
  for (int k = 0; k < 6; ++k)
    if (l[k] < 0 || l[k] >= 6 || h[k] < 0 || h[k] >= 6)
      throw DomainError("custom-table family: table entries must index S3");
  for (int k : domain)
    if (k < 0 || k >= 6) throw DomainError("custom-table family: domain entry outside S3");
  PairWeightFamily f;
  f.kind = PairWeightKind::custom_table;
  f.table_l = l;
  f.table_h = h;
  f.table_domain = std::move(domain);
  return f;
}

bool PairWeightFamily::is_unital() const {
  switch (kind) {
    case PairWeightKind::identity:
    case PairWeightKind::inverse:
    case PairWeightKind::shift:
      return true;
    case PairWeightKind::power:
      return lambda != 0.0;
    case PairWeightKind::signed_power:
      return false;  // L(+I) = -I
    case PairWeightKind::custom_table:
      return table_l[0] == 0 && table_h[0] == 0;
  }
  return false;
}

bool PairWeightFamily::is_inverse_preserving() const {
  if (kind != PairWeightKind::custom_table) return kind != PairWeightKind::power || lambda != 0.0;
  for (const Perm3& p : Perm3::all()) {
    const Perm3 pinv = multcalc::inverse(p);
    if (table_l[pinv.index()] != multcalc::inverse(Perm3::from_index(table_l[p.index()])).index()) return false;
    if (table_h[pinv.index()] != multcalc::inverse(Perm3::from_index(table_h[p.index()])).index()) return false;
  }
  return true;
}

bool PairWeightFamily::is_bijective() const {
  switch (kind) {
    case PairWeightKind::identity:
    case PairWeightKind::inverse:
    case PairWeightKind::signed_power:
      return true;
    case PairWeightKind::power:
      return lambda != 0.0;
    case PairWeightKind::shift:
      return false;
    case PairWeightKind::custom_table:
      for (int k = 0; k < 6; ++k)
        if (table_h[table_l[k]] != k || table_l[table_h[k]] != k) return false;
      return true;
  }
  return false;
}

std::string PairWeightFamily::name() const {
  std::ostringstream os;
  os << to_string(kind);
  if (kind == PairWeightKind::power || kind == PairWeightKind::signed_power) os << '(' << lambda << ')';
  return os.str();
}

std::string to_string(PairWeightKind kind) {
  switch (kind) {
    case PairWeightKind::identity: return "identity";
    case PairWeightKind::inverse: return "inverse";
    case PairWeightKind::power: return "power";
    case PairWeightKind::shift: return "shift";
    case PairWeightKind::signed_power: return "signed-power";
    case PairWeightKind::custom_table: return "custom-table";
  }
  return "unknown";
}

std::optional<PairWeightKind> parse_pair_weight_kind(const std::string& s) {
  if (s == "identity") return PairWeightKind::identity;
  if (s == "inverse") return PairWeightKind::inverse;
  if (s == "power") return PairWeightKind::power;
  if (s == "shift") return PairWeightKind::shift;
  if (s == "signed-power") return PairWeightKind::signed_power;
  if (s == "custom-table") return PairWeightKind::custom_table;
  return std::nullopt;
}

}  // namespace multcalc
