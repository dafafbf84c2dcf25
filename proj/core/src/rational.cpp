#include "crq/rational.hpp"

#include <cctype>

namespace crq {

std::optional<Rat> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t slash = text.find('/');
  std::size_t dot = text.find('.');
  if (slash != std::string::npos && dot != std::string::npos) return std::nullopt;

  auto digits = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };

  if (slash != std::string::npos) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!digits(num) || !digits(den)) return std::nullopt;
    Rat r;
    if (mpq_set_str(r.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0) return std::nullopt;
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0) return std::nullopt;
    r.canonicalize();
    return r;
  }
  if (dot != std::string::npos) {
    std::string whole = text.substr(0, dot);
    std::string frac = text.substr(dot + 1);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    if (!digits(whole)) return std::nullopt;
    for (char c : frac)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    mpz_class whole_z(whole);
    Rat r{whole_z};
    if (!frac.empty()) {
      mpz_class scale(1);
      for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
      mpz_class frac_z(frac);
      Rat f{frac_z, scale};
      f.canonicalize();
      r = text[0] == '-' ? Rat(r - f) : Rat(r + f);
    }
    return r;
  }
  if (!digits(text)) return std::nullopt;
  return Rat(mpz_class(text));
}

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace crq
