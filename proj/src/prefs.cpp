#include "mlurn/prefs.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace mlurn::prefs {

namespace {

void check_index(int d, int i) {
  if (i < 0 || i >= d) throw ProfileParseError("alternative index out of range");
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

long parse_long(const std::string& tok, const char* what) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ProfileParseError(std::string("bad ") + what + ": '" + tok + "'");
  return value;
}

}  // namespace

PreferenceRelation::PreferenceRelation(int d_, std::set<std::pair<int, int>> pairs_)
    : d(d_), pairs(std::move(pairs_)) {
  for (const auto& [i, j] : pairs) {
    if (i == j) throw std::invalid_argument("self-pair in preference relation");
    check_index(d, i);
    check_index(d, j);
    if (pairs.count({j, i}))
      throw std::invalid_argument("preference relation is not asymmetric");
  }
}

PreferenceRelation PreferenceRelation::from_ranking(int d, const std::vector<int>& ranking) {
  if (static_cast<int>(ranking.size()) != d)
    throw ProfileParseError("ranking must list every alternative exactly once");
  std::vector<bool> seen(d, false);
  for (int a : ranking) {
    check_index(d, a);
    if (seen[a]) throw ProfileParseError("duplicate alternative in a ranking");
    seen[a] = true;
  }
  std::set<std::pair<int, int>> pairs;
  for (std::size_t i = 0; i < ranking.size(); ++i)
    for (std::size_t j = i + 1; j < ranking.size(); ++j)
      pairs.insert({ranking[i], ranking[j]});
  return PreferenceRelation(d, std::move(pairs));
}

std::vector<int> PreferenceRelation::as_ranking() const {
  if (static_cast<long>(pairs.size()) != static_cast<long>(d) * (d - 1) / 2) return {};
  std::vector<int> outdeg(d, 0);
  for (const auto& [i, j] : pairs) {
    (void)j;
    ++outdeg[i];
  }
  std::vector<int> order(d);
  std::vector<bool> slot(d, false);
  for (int a = 0; a < d; ++a) {
    int pos = d - 1 - outdeg[a];
    if (slot[pos]) return {};
    slot[pos] = true;
    order[pos] = a;
  }
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (!prefers(order[i], order[j])) return {};
  return order;
}

long Profile::voter_count() const {
  long total = 0;
  for (const auto& [count, rel] : groups) total += count;
  return total;
}

void FractionalProfile::validate() const {
  Rational total = 0;
  for (const auto& [rel, w] : weights) {
    if (rel.d != d) throw std::invalid_argument("relation dimension mismatch");
    if (w < 0) throw std::invalid_argument("negative profile weight");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("fractional profile weights must sum to 1");
}

Profile parse_profile(std::string_view text) {
  Profile profile;
  bool have_d = false;

  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t next = text.find('\n', pos);
    std::string_view raw = text.substr(pos, next == std::string_view::npos ? std::string_view::npos
                                                                           : next - pos);
    pos = next == std::string_view::npos ? text.size() + 1 : next + 1;
    ++line_no;

    std::string line(raw);
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (!have_d) {
      if (line.rfind("d", 0) != 0 || line.find('=') == std::string::npos)
        throw ProfileParseError("first line must be d=<int> (line " + std::to_string(line_no) + ")");
      std::string value = trim(line.substr(line.find('=') + 1));
      long d = parse_long(value, "alternative count");
      if (d < 1) throw ProfileParseError("alternative count must be >= 1");
      profile.d = static_cast<int>(d);
      have_d = true;
      continue;
    }

    auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ProfileParseError("malformed line " + std::to_string(line_no) + ": missing ':'");
    long count = parse_long(trim(line.substr(0, colon)), "voter count");
    if (count <= 0) throw ProfileParseError("voter count must be positive (line " +
                                            std::to_string(line_no) + ")");
    std::string body = trim(line.substr(colon + 1));

    if (body.rfind("pairs", 0) == 0) {
      std::string rest = trim(body.substr(5));
      std::set<std::pair<int, int>> pairs;
      if (!rest.empty()) {
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ',')) {
          item = trim(item);
          auto gt = item.find('>');
          if (gt == std::string::npos)
            throw ProfileParseError("malformed pair '" + item + "' (line " +
                                    std::to_string(line_no) + ")");
          long i = parse_long(trim(item.substr(0, gt)), "alternative");
          long j = parse_long(trim(item.substr(gt + 1)), "alternative");
          if (i < 1 || i > profile.d || j < 1 || j > profile.d)
            throw ProfileParseError("alternative index out of range (line " +
                                    std::to_string(line_no) + ")");
          if (i == j)
            throw ProfileParseError("self-pair (line " + std::to_string(line_no) + ")");
          if (pairs.count({static_cast<int>(j - 1), static_cast<int>(i - 1)}))
            throw ProfileParseError("asymmetry violated (line " + std::to_string(line_no) + ")");
          pairs.insert({static_cast<int>(i - 1), static_cast<int>(j - 1)});
        }
      }
      profile.groups.emplace_back(count, PreferenceRelation(profile.d, std::move(pairs)));
    } else {
      std::stringstream ss(body);
      std::string tok;
      std::vector<int> ranking;
      while (ss >> tok) {
        long a = parse_long(tok, "alternative");
        if (a < 1 || a > profile.d)
          throw ProfileParseError("alternative index out of range (line " +
                                  std::to_string(line_no) + ")");
        ranking.push_back(static_cast<int>(a - 1));
      }
      try {
        profile.groups.emplace_back(count, PreferenceRelation::from_ranking(profile.d, ranking));
      } catch (const ProfileParseError& e) {
        throw ProfileParseError(std::string(e.what()) + " (line " + std::to_string(line_no) + ")");
      }
    }
  }

  if (!have_d) throw ProfileParseError("missing d=<int> line");
  if (profile.groups.empty()) throw ProfileParseError("profile has no voters");
  return profile;
}

std::string serialize(const Profile& p) {
  std::ostringstream out;
  out << "d=" << p.d << "\n";
  for (const auto& [count, rel] : p.groups) {
    out << count << ": ";
    auto ranking = rel.as_ranking();
    if (!ranking.empty()) {
      for (std::size_t i = 0; i < ranking.size(); ++i)
        out << (i ? " " : "") << ranking[i] + 1;
    } else {
      out << "pairs";
      bool first = true;
      for (const auto& [i, j] : rel.pairs) {
        out << (first ? " " : ", ") << i + 1 << ">" << j + 1;
        first = false;
      }
    }
    out << "\n";
  }
  return out.str();
}

RationalMatrix majority_matrix(const Profile& p) {
  const long voters = p.voter_count();
  if (voters < 1) throw std::invalid_argument("profile has no voters");
  RationalMatrix m = RationalMatrix::Zero(p.d, p.d);
  for (const auto& [count, rel] : p.groups)
    for (const auto& [i, j] : rel.pairs) m(i, j) += count;
  for (int i = 0; i < p.d; ++i)
    for (int j = 0; j < p.d; ++j) m(i, j) /= voters;
  return m;
}

RationalMatrix margin_matrix(const Profile& p) {
  RationalMatrix m = majority_matrix(p);
  return m - RationalMatrix(m.transpose());
}

FractionalProfile to_fractional(const Profile& p) {
  const long voters = p.voter_count();
  FractionalProfile f;
  f.d = p.d;
  for (const auto& [count, rel] : p.groups) f.weights[rel] += make_rational(count, voters);
  f.validate();
  return f;
}

RationalMatrix majority_matrix(const FractionalProfile& p) {
  p.validate();
  RationalMatrix m = RationalMatrix::Zero(p.d, p.d);
  for (const auto& [rel, w] : p.weights)
    for (const auto& [i, j] : rel.pairs) m(i, j) += w;
  return m;
}

RationalMatrix margin_matrix(const FractionalProfile& p) {
  RationalMatrix m = majority_matrix(p);
  return m - RationalMatrix(m.transpose());
}

FractionalProfile mix(const FractionalProfile& p1, const FractionalProfile& p2,
                      const Rational& lambda) {
  if (p1.d != p2.d) throw std::invalid_argument("dimension mismatch in mix");
  if (lambda < 0 || lambda > 1) throw std::invalid_argument("lambda outside [0,1]");
  FractionalProfile out;
  out.d = p1.d;
  for (const auto& [rel, w] : p1.weights) out.weights[rel] += lambda * w;
  for (const auto& [rel, w] : p2.weights) out.weights[rel] += (1 - lambda) * w;
  for (auto it = out.weights.begin(); it != out.weights.end();)
    it = it->second == 0 ? out.weights.erase(it) : std::next(it);
  out.validate();
  return out;
}

RationalMatrix majority_from_margins(const RationalMatrix& margins) {
  if (!is_skew_symmetric(margins)) throw std::invalid_argument("margins not skew-symmetric");
  RationalMatrix m(margins.rows(), margins.cols());
  for (Eigen::Index i = 0; i < margins.rows(); ++i)
    for (Eigen::Index j = 0; j < margins.cols(); ++j)
      m(i, j) = i == j ? Rational(0) : (margins(i, j) + 1) / 2;
  return m;
}

Matrix majority_from_margins(const Matrix& margins) {
  if (!is_skew_symmetric(margins)) throw std::invalid_argument("margins not skew-symmetric");
  Matrix m(margins.rows(), margins.cols());
  for (Eigen::Index i = 0; i < margins.rows(); ++i)
    for (Eigen::Index j = 0; j < margins.cols(); ++j)
      m(i, j) = i == j ? 0.0 : (margins(i, j) + 1) / 2;
  return m;
}

}  // namespace mlurn::prefs
