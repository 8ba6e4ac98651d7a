#include "dialens/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

namespace dialens {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '\\') out += "\\\\";
    else if (c == '\t') out += "\\t";
    else if (c == '\n') out += "\\n";
    else out += c;
  }
  return out;
}

std::string unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out += s[i];
      continue;
    }
    if (++i == s.size()) throw ParseError("report: dangling escape");
    switch (s[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      default: throw ParseError(std::string("report: unknown escape \\") + s[i]);
    }
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) return out;
    start = tab + 1;
  }
}

}  // namespace

bool CheckReport::ok() const {
  return !structural && std::all_of(checks.begin(), checks.end(), [](const CheckEntry& c) { return c.pass; });
}

CheckReport make_report(std::string subject, const std::vector<std::string>& laws, const LawReport& r) {
  CheckReport out;
  out.subject = std::move(subject);
  out.structural = r.has_structural();
  std::set<std::string> failed;
  for (const auto& v : r.violations) failed.insert(v.law);
  for (const auto& law : laws)
    if (!failed.count(law)) out.checks.push_back({law, true, {}});
  for (const auto& v : r.violations) out.checks.push_back({v.law, false, v.witness});
  return out;
}

std::string to_text(const CheckReport& r) {
  std::ostringstream out;
  out << "subject\t" << escape(r.subject) << "\n";
  for (const auto& c : r.checks)
    out << "check\t" << escape(c.name) << "\t" << (c.pass ? "pass" : "fail") << "\t" << escape(c.witness) << "\n";
  out << "structural\t" << (r.structural ? "yes" : "no") << "\n";
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", r.wall_ms);
  out << "wall_ms\t" << ms << "\n";
  return out.str();
}

CheckReport parse_report(const std::string& text) {
  CheckReport r;
  std::istringstream in(text);
  std::string line;
  bool have_subject = false, have_wall = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_tabs(line);
    if (f[0] == "subject" && f.size() == 2) {
      r.subject = unescape(f[1]);
      have_subject = true;
    } else if (f[0] == "check" && f.size() == 4 && (f[2] == "pass" || f[2] == "fail")) {
      r.checks.push_back({unescape(f[1]), f[2] == "pass", unescape(f[3])});
    } else if (f[0] == "structural" && f.size() == 2 && (f[1] == "yes" || f[1] == "no")) {
      r.structural = f[1] == "yes";
    } else if (f[0] == "wall_ms" && f.size() == 2) {
      try {
        r.wall_ms = std::stod(f[1]);
      } catch (const std::exception&) {
        throw ParseError("report: bad wall_ms '" + f[1] + "'");
      }
      have_wall = true;
    } else {
      throw ParseError("report: unrecognized line '" + line + "'");
    }
  }
  if (!have_subject || !have_wall) throw ParseError("report: missing subject or wall_ms");
  return r;
}

int exit_code(const CheckReport& r) {
  if (r.structural) return 2;
  return r.ok() ? 0 : 1;
}

}  // namespace dialens
