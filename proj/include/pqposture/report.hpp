#pragma once

// Rendering of analysis results for the command-line tool.
//
// Two formats: `table` for people, `machine` for scripts. Machine output is
// one record per line, tab-separated, first column the record type and the
// rest key=value pairs. Statuses are split into level and mechanism fields
// so no dagger character appears in machine output.

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pqposture/composition.hpp"
#include "pqposture/path.hpp"
#include "pqposture/planner.hpp"
#include "pqposture/registry.hpp"
#include "pqposture/scenario.hpp"

namespace pqposture::report {

enum class Format { Table, Machine };

namespace detail {

// Display width in terminal columns, counting UTF-8 code points.
inline std::size_t display_width(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) : rows_{std::move(header)} {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> widths;
    for (const auto& r : rows_) {
      widths.resize(std::max(widths.size(), r.size()), 0);
      for (std::size_t i = 0; i < r.size(); ++i) widths[i] = std::max(widths[i], display_width(r[i]));
    }
    for (std::size_t ri = 0; ri < rows_.size(); ++ri) {
      print_row(os, rows_[ri], widths);
      if (ri == 0) {
        std::vector<std::string> rule;
        for (auto w : widths) rule.emplace_back(w, '-');
        print_row(os, rule, widths);
      }
    }
  }

 private:
  static void print_row(std::ostream& os, const std::vector<std::string>& row,
                        const std::vector<std::size_t>& widths) {
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) {
      line += row[i];
      if (i + 1 < row.size()) line += std::string(widths[i] - display_width(row[i]) + 2, ' ');
    }
    os << line << '\n';
  }

  std::vector<std::vector<std::string>> rows_;
};

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string opt_status(const std::optional<Status>& s) {
  return s ? to_string(*s) : std::string("---");
}

// Machine record builder.
class Record {
 public:
  explicit Record(std::string_view type) : line_(type) {}
  Record& kv(std::string_view key, std::string_view value) {
    line_ += '\t';
    line_ += key;
    line_ += '=';
    line_ += value;
    return *this;
  }
  Record& kv(std::string_view key, std::size_t value) { return kv(key, std::to_string(value)); }
  Record& status(std::string_view prefix, const std::optional<Status>& s) {
    const std::string p(prefix);
    kv(p + ".level", s ? to_string(s->level()) : "-");
    return kv(p + ".mechanism", s ? to_string(s->mechanism()) : "-");
  }
  void emit(std::ostream& os) const { os << line_ << '\n'; }

 private:
  std::string line_;
};

inline std::string layer_label(const LayerSpec& l) { return l.id + ": " + l.protocol; }

inline std::string format_risk(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace detail

inline std::string summary_line(const PostureReport& r) {
  return "conf = " + to_string(r.chain_conf) + ", auth = " + to_string(r.chain_auth) +
         ", meta = " + to_string(r.chain_meta) + ", d* = " + std::to_string(r.exposure_depth);
}

inline void render_analyze(std::ostream& os, const ScenarioDoc& doc, const PostureReport& r,
                           Format fmt) {
  using detail::Record;
  if (fmt == Format::Machine) {
    Record("scenario").kv("name", doc.name).kv("layers", doc.chain.size()).emit(os);
    for (const auto& l : r.per_layer)
      Record("layer").kv("id", l.layer_id).kv("protocol", l.protocol).status("conf", l.conf).status("auth", l.auth).emit(os);
    Record("chain").kv("facet", "conf").kv("operator", "max").status("status", r.chain_conf).emit(os);
    Record("chain").kv("facet", "auth").kv("operator", "min").status("status", r.chain_auth).emit(os);
    Record("chain").kv("facet", "meta").kv("operator", "outermost").status("status", r.chain_meta).emit(os);
    Record("depth").kv("d*", r.exposure_depth).kv("n", doc.chain.size()).emit(os);
    for (const auto& c : r.caveats) Record("caveat").kv("text", c).emit(os);
    return;
  }

  os << "Scenario: " << doc.name << '\n';
  if (!doc.description.empty()) os << doc.description << '\n';
  os << '\n';
  detail::Table t({"Layer", "Protocol", "KEX / key source", "AUTH", "ENC", "σ_conf", "σ_auth"});
  for (std::size_t i = 0; i < doc.chain.size(); ++i) {
    const auto& layer = doc.chain.layers()[i];
    std::string key = std::visit(
        [](const auto& root) -> std::string {
          using T = std::decay_t<decltype(root)>;
          if constexpr (std::is_same_v<T, KexRoot>) return root.entry.name;
          else if constexpr (std::is_same_v<T, PreSharedRoot>) return "pre-shared (" + root.label + ")";
          else return "hybrid (" + std::to_string(root.components.size()) + " sources)";
        },
        layer.key_chain.root.variant());
    std::string auth = "---";
    if (const auto* s = std::get_if<SignatureAuth>(&layer.auth)) auth = s->entry.name;
    if (const auto* m = std::get_if<MacAuth>(&layer.auth)) auth = m->entry.name + " (MAC)";
    t.add({"L" + layer.osi_label, layer.protocol, key, auth, layer.enc ? layer.enc->name : "---",
           detail::opt_status(r.per_layer[i].conf), detail::opt_status(r.per_layer[i].auth)});
  }
  t.print(os);

  auto args = [&](bool conf) {
    std::vector<std::string> parts;
    for (const auto& l : r.per_layer)
      if (const auto& s = conf ? l.conf : l.auth) parts.push_back(to_string(*s));
    return detail::join(parts, ", ");
  };
  os << "\nChain composition:\n";
  os << "  conf = max(" << args(true) << ") = " << r.chain_conf << '\n';
  os << "  auth = min(" << args(false) << ") = " << r.chain_auth << '\n';
  if (doc.chain.empty())
    os << "  meta = outermost() = " << r.chain_meta << '\n';
  else
    os << "  meta = outermost(L" << doc.chain.layers().front().osi_label << ") = " << r.chain_meta << '\n';
  os << "  d*   = " << r.exposure_depth;
  if (r.exposure_depth == doc.chain.size() && !doc.chain.empty()) os << " = n";
  os << "\n\n" << summary_line(r) << '\n';
  for (const auto& c : r.caveats) os << "note: " << c << '\n';
}

inline void render_peel(std::ostream& os, const ScenarioDoc& doc, const PostureReport& r, Format fmt) {
  using detail::Record;
  if (fmt == Format::Machine) {
    Record("scenario").kv("name", doc.name).emit(os);
    for (const auto& s : r.peel_trace) {
      std::string hndl = s.depth == 0 ? "observed" : s.harvestable ? "yes" : s.blocked ? "blocked" : "no";
      Record("peel").kv("depth", s.depth).kv("layer", s.depth == 0 ? "wire" : s.layer_id)
          .status("conf", s.status).kv("hndl", hndl).emit(os);
      for (const auto& tag : s.revealed) Record("reveal").kv("depth", s.depth).kv("tag", tag).emit(os);
      for (const auto& tag : s.harvest) Record("harvest").kv("depth", s.depth).kv("tag", tag).emit(os);
    }
    Record("depth").kv("d*", r.exposure_depth).kv("n", doc.chain.size()).emit(os);
    return;
  }

  os << "HNDL quantum exposure: " << doc.name << "\n\n";
  detail::Table t({"d", "Layer", "σ_conf", "HNDL", "Newly revealed data", "Harvestable data"});
  for (const auto& s : r.peel_trace) {
    if (s.depth == 0) {
      t.add({"0", "wire", "---", "---", detail::join(s.revealed, "; "), detail::join(s.harvest, "; ")});
      continue;
    }
    const auto& layer = doc.chain.layers()[s.depth - 1];
    std::string hndl = s.harvestable ? "Yes" : "No";
    if (s.harvestable && s.status && s.status->daggered()) hndl += "†";
    std::string revealed = detail::join(s.revealed, "; ");
    std::string harvest = detail::join(s.harvest, "; ");
    if (s.blocked) {
      revealed = "BLOCKED (" + revealed + " stays protected)";
      harvest = "not harvestable";
    } else if (!s.harvestable) {
      revealed = "unreachable";
      harvest = "not harvestable";
    }
    t.add({std::to_string(s.depth), detail::layer_label(layer), detail::opt_status(s.status), hndl,
           revealed, harvest});
  }
  t.print(os);
  os << "\nd* = " << r.exposure_depth;
  if (r.exposure_depth == doc.chain.size() && !doc.chain.empty())
    os << " = n (application plaintext is harvestable)";
  os << '\n';
}

inline void require_path(const ScenarioDoc& doc) {
  if (!doc.path) throw Error("scenario '" + doc.name + "' has no path section");
}

inline void render_segments(std::ostream& os, const ScenarioDoc& doc, Format fmt) {
  require_path(doc);
  const Path& path = *doc.path;
  using detail::Record;
  if (fmt == Format::Machine) {
    Record("scenario").kv("name", doc.name).emit(os);
    for (const auto& seg : path.segments) {
      const auto p = segment_posture(seg);
      const PathNode* to = path.find(seg.to);
      Record("segment").kv("from", seg.from).kv("to", seg.to)
          .kv("layers", detail::join(::pqposture::detail::layer_ids(seg.active_layers), "+"))
          .status("conf", p.conf).status("auth", p.auth)
          .kv("strips", detail::join(to->terminates, "+")).emit(os);
    }
    return;
  }
  os << "Segment-by-segment analysis: " << doc.name << "\n\n";
  detail::Table t({"Segment", "Active layers", "σ_conf", "σ_auth", "Receiving node strips"});
  for (const auto& seg : path.segments) {
    const auto p = segment_posture(seg);
    const PathNode* to = path.find(seg.to);
    std::vector<std::string> ids;
    for (const auto& l : seg.active_layers) ids.push_back(l.id);
    t.add({seg.from + " -> " + seg.to, ids.empty() ? "(none, plaintext)" : detail::join(ids, " + "),
           to_string(p.conf), to_string(p.auth),
           to->terminates.empty() ? "---" : detail::join(to->terminates, ", ")});
  }
  t.print(os);
}

inline std::string hndl_text(const EndpointReport& e) {
  switch (e.scope) {
    case HndlScope::PreTransmission: return "N/A (not yet transmitted)";
    case HndlScope::Endpoint:        return "N/A (endpoint)";
    case HndlScope::OffDataPath:     return "N/A (not on data path)";
    case HndlScope::Analyzed:        break;
  }
  std::string out;
  if (e.hndl.broken.empty())
    out = "no additional recovery";
  else
    out = "break " + detail::join(e.hndl.broken, ", ") + " -> " + detail::join(e.hndl.recovered, "; ");
  if (e.hndl.blocked_by)
    out += ". BLOCKED at " + *e.hndl.blocked_by;
  else if (!e.layers_remaining.empty())
    out += ". No blocking layer";
  return out;
}

inline void render_endpoints(std::ostream& os, const ScenarioDoc& doc, Format fmt) {
  require_path(doc);
  const Path& path = *doc.path;
  using detail::Record;
  std::vector<EndpointReport> eps;
  for (const auto& n : path.nodes) eps.push_back(endpoint_posture(path, n.name));
  const auto boundaries = trust_boundary_report(path);

  if (fmt == Format::Machine) {
    Record("scenario").kv("name", doc.name).emit(os);
    for (const auto& e : eps) {
      Record("endpoint").kv("node", e.node).kv("role", to_string(e.role))
          .kv("remaining", detail::join(e.layers_remaining, "+"))
          .kv("scope", to_string(e.scope))
          .kv("broken", detail::join(e.hndl.broken, "+"))
          .kv("blocked_by", e.hndl.blocked_by.value_or("-"))
          .kv("quantum_resistant", e.quantum_resistant.empty() ? "None" : detail::join(e.quantum_resistant, "+"))
          .emit(os);
      for (const auto& tag : e.classical_exposure) Record("classical").kv("node", e.node).kv("tag", tag).emit(os);
      for (const auto& tag : e.hndl.recovered) Record("hndl").kv("node", e.node).kv("tag", tag).emit(os);
    }
    for (const auto& b : boundaries) {
      Record("boundary").kv("node", b.node).kv("coincides", b.coincides ? "yes" : "no").emit(os);
      for (const auto& tag : b.hndl_only) Record("hndl_only").kv("node", b.node).kv("tag", tag).emit(os);
    }
    return;
  }

  os << "Endpoint vulnerability posture: " << doc.name << "\n\n";
  detail::Table t({"Endpoint", "Layers remaining", "Classical exposure", "HNDL exposure (quantum)", "Quantum-resistant"});
  for (const auto& e : eps) {
    std::string remaining = e.layers_remaining.empty() ? "None" : detail::join(e.layers_remaining, " + ");
    if (e.scope == HndlScope::PreTransmission) remaining += " (pre-tx)";
    if (e.scope == HndlScope::OffDataPath) remaining = "(not on data path)";
    std::string qr = e.quantum_resistant.empty() ? "None" : detail::join(e.quantum_resistant, ", ");
    if (e.scope == HndlScope::Endpoint || e.scope == HndlScope::OffDataPath) qr = "---";
    t.add({e.node, remaining, detail::join(e.classical_exposure, "; "), hndl_text(e), qr});
  }
  t.print(os);
  if (!boundaries.empty()) {
    os << "\nTrust boundaries:\n";
    for (const auto& b : boundaries) {
      os << "  " << b.node << ": ";
      if (b.coincides)
        os << "HNDL recovers nothing beyond classical exposure\n";
      else
        os << "HNDL additionally recovers " << detail::join(b.hndl_only, "; ") << '\n';
    }
  }
}

inline std::string set_text(const LayerSet& s, const Chain& chain) {
  if (s.empty()) return "{}";
  std::vector<std::string> ids;
  for (auto i : s) ids.push_back(chain.layers()[i].id);
  return "{" + detail::join(ids, ", ") + "}";
}

inline void render_plan(std::ostream& os, const ScenarioDoc& doc, const RiskWeights& w,
                        const std::vector<LayerSet>& conf_sets, const std::vector<LayerSet>& auth_sets,
                        const PlanReport& plan, Format fmt) {
  using detail::Record;
  if (fmt == Format::Machine) {
    Record("scenario").kv("name", doc.name).emit(os);
    Record("weights").kv("conf", detail::format_risk(w.conf)).kv("auth", detail::format_risk(w.auth))
        .kv("meta", detail::format_risk(w.meta)).emit(os);
    for (const auto& s : conf_sets) Record("minimal_conf").kv("layers", set_text(s, doc.chain)).emit(os);
    for (const auto& s : auth_sets) Record("minimal_auth").kv("layers", set_text(s, doc.chain)).emit(os);
    for (std::size_t i = 0; i < plan.snapshots.size(); ++i) {
      const auto& snap = plan.snapshots[i];
      Record rec("step");
      rec.kv("index", i).kv("action", i == 0 ? "initial" : "upgrade " + plan.ordering[i - 1].layer_id)
          .status("conf", snap.conf).status("auth", snap.auth).status("meta", snap.meta)
          .kv("d*", snap.depth).kv("risk", detail::format_risk(w.risk(snap)));
      rec.emit(os);
    }
    Record("plan").kv("cumulative_risk", detail::format_risk(plan.cumulative_risk))
        .kv("orderings", plan.orderings_evaluated).kv("model", plan.model_note).emit(os);
    return;
  }

  os << "Migration plan: " << doc.name << "\n\n";
  auto sets_line = [&](const std::vector<LayerSet>& sets) {
    if (sets.empty()) return std::string("none (goal unreachable by upgrades)");
    std::vector<std::string> parts;
    for (const auto& s : sets) parts.push_back(set_text(s, doc.chain));
    return detail::join(parts, ", ");
  };
  os << "Minimal confidentiality migrations: " << sets_line(conf_sets) << '\n';
  os << "Minimal authentication migrations: " << sets_line(auth_sets) << "\n\n";
  os << "Weights: conf=" << detail::format_risk(w.conf) << " auth=" << detail::format_risk(w.auth)
     << " meta=" << detail::format_risk(w.meta) << '\n';
  detail::Table t({"Step", "Action", "conf", "auth", "meta", "d*", "risk"});
  for (std::size_t i = 0; i < plan.snapshots.size(); ++i) {
    const auto& snap = plan.snapshots[i];
    t.add({std::to_string(i), i == 0 ? "(initial)" : "upgrade " + plan.ordering[i - 1].layer_id,
           to_string(snap.conf), to_string(snap.auth), to_string(snap.meta), std::to_string(snap.depth),
           detail::format_risk(w.risk(snap))});
  }
  t.print(os);
  os << "\nCumulative risk: " << detail::format_risk(plan.cumulative_risk) << " (best of "
     << plan.orderings_evaluated << " orderings)\n";
  os << "Note: " << plan.model_note << '\n';
}

inline void render_compare(std::ostream& os, const InversionReport& r, Format fmt) {
  using detail::Record;
  if (fmt == Format::Machine) {
    Record("compare").kv("a", r.a_name).kv("b", r.b_name).kv("a_rank", std::to_string(r.a_rank))
        .kv("b_rank", std::to_string(r.b_rank)).emit(os);
    for (const auto& f : r.facets)
      Record("facet").kv("scope", f.scope).kv("facet", f.facet).status("a", f.a).status("b", f.b)
          .kv("level_worse", f.level_worse ? "yes" : "no")
          .kv("mechanism_worse", f.mechanism_worse ? "yes" : "no").emit(os);
    Record("verdict").kv("classical_upgrade", r.classical_upgrade ? "yes" : "no")
        .kv("inversion", r.inversion ? "yes" : "no")
        .kv("mechanism_downgrade", r.mechanism_downgrade ? "yes" : "no").emit(os);
    return;
  }
  auto mech = [](const Status& s) {
    switch (s.mechanism()) {
      case Mechanism::None:      return std::string("none");
      case Mechanism::Grover:    return std::string("Grover");
      case Mechanism::Shor:      return std::string("Shor");
      case Mechanism::Classical: return std::string("classical");
    }
    return std::string("?");
  };
  os << "Comparison: " << r.a_name << " (classical rank " << r.a_rank << ") vs " << r.b_name
     << " (classical rank " << r.b_rank << ")\n\n";
  detail::Table t({"Scope", "Facet", r.a_name, r.b_name, "Mechanism", "Quantum effect"});
  for (const auto& f : r.facets) {
    std::string effect = f.level_worse ? "worse" : f.mechanism_worse ? "same level, harsher mechanism"
                         : compare(f.b, f.a) > 0 ? "better" : "same";
    t.add({f.scope, f.facet, to_string(f.a), to_string(f.b), mech(f.a) + " -> " + mech(f.b), effect});
  }
  t.print(os);
  os << "\nClassical security: " << (r.classical_upgrade ? r.b_name + " > " + r.a_name
                                       : r.a_name + " >= " + r.b_name) << '\n';
  if (r.inversion)
    os << "INVERSION: " << r.b_name << " is classically stronger but quantum-weaker\n";
  else if (r.mechanism_downgrade)
    os << "No level inversion, but " << r.b_name << " trades Grover exposure for Shor exposure\n";
  else
    os << "No inversion\n";
}

inline void render_registry(std::ostream& os, const Registry& reg, Format fmt) {
  using detail::Record;
  if (fmt == Format::Machine) {
    for (const auto& e : reg.entries())
      Record("entry").kv("name", e.name).kv("role", to_string(e.role)).status("status", e.status)
          .kv("classical_bits", std::to_string(e.classical_bits))
          .kv("post_quantum_bits", std::to_string(e.post_quantum_bits)).emit(os);
    return;
  }
  detail::Table t({"Algorithm", "Role", "Status", "Classical bits", "PQ bits", "Note"});
  for (const auto& e : reg.entries())
    t.add({e.name, std::string(to_string(e.role)), to_string(e.status), std::to_string(e.classical_bits),
           std::to_string(e.post_quantum_bits), e.note});
  t.print(os);
}

inline void render_fixtures(std::ostream& os, const std::vector<ScenarioDoc>& docs, Format fmt) {
  using detail::Record;
  if (fmt == Format::Machine) {
    for (const auto& d : docs) Record("fixture").kv("name", d.name).kv("layers", d.chain.size()).emit(os);
    return;
  }
  detail::Table t({"Name", "Layers", "Description"});
  for (const auto& d : docs) t.add({d.name, std::to_string(d.chain.size()), d.description});
  t.print(os);
}

}  // namespace pqposture::report
