// Copyright 2026 The gemify Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gemify/fact_store.h"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "gemify/errors.h"

namespace gemify {
namespace {

auto sort_key(const Annotation &a) {
  return std::tie(a.clause_index, a.span.begin, a.span.end, a.cue_class,
                  a.producer, a.features);
}

}  // namespace

std::string Annotation::feature(std::string_view key,
                                std::string_view fallback) const {
  auto it = features.find(std::string(key));
  return it == features.end() ? std::string(fallback) : it->second;
}

std::string_view to_string(RevisionAction action) {
  return action == RevisionAction::kExtended ? "Extended" : "Closed";
}

void FactStore::RegisterStage(std::string name, int priority) {
  stages_[std::move(name)] = priority;
}

bool FactStore::IsRegistered(std::string_view name) const {
  return stages_.find(name) != stages_.end();
}

void FactStore::BeginStage(std::string_view name) {
  if (!IsRegistered(name)) {
    throw StageError("stage '" + std::string(name) + "' is not registered");
  }
  if (!active_.empty()) {
    throw StageError("stage '" + active_ + "' is still running");
  }
  if (std::find(log_.begin(), log_.end(), name) != log_.end()) {
    throw StageError("stage '" + std::string(name) + "' already ran");
  }
  active_ = std::string(name);
}

void FactStore::EndStage() {
  if (active_.empty()) throw StageError("no stage is running");
  log_.push_back(active_);
  active_.clear();
}

void FactStore::RequireActive(std::string_view producer) const {
  if (!IsRegistered(producer)) {
    throw StageError("unregistered producer '" + std::string(producer) + "'");
  }
  if (producer != active_) {
    throw StageError("producer '" + std::string(producer) +
                     "' is not the scheduled stage");
  }
}

int FactStore::Priority(std::string_view producer) const {
  auto it = stages_.find(producer);
  return it == stages_.end() ? -1 : it->second;
}

int FactStore::Post(Annotation ann) {
  RequireActive(ann.producer);
  if (ann.span.end < ann.span.begin) {
    throw StageError("annotation span is inverted");
  }
  auto it = by_clause_.find(ann.clause_index);
  if (it != by_clause_.end()) {
    for (int id : it->second) {
      const Annotation &a = annotations_[id];
      if (live_[id] && a.span == ann.span && a.cue_class == ann.cue_class &&
          a.producer == ann.producer) {
        return id;
      }
    }
  }
  ann.id = static_cast<int>(annotations_.size());
  by_clause_[ann.clause_index].push_back(ann.id);
  by_class_[ann.cue_class].push_back(ann.id);
  annotations_.push_back(std::move(ann));
  live_.push_back(true);
  return annotations_.back().id;
}

int FactStore::Supersede(int old_id, std::optional<Annotation> replacement) {
  RequireActive(active_);
  if (old_id < 0 || old_id >= static_cast<int>(annotations_.size())) {
    throw StageError("supersede of unknown annotation " +
                     std::to_string(old_id));
  }
  live_[old_id] = false;
  int new_id = -1;
  if (replacement) {
    replacement->producer = active_;
    new_id = Post(std::move(*replacement));
  }
  supersedes_.push_back({old_id, new_id, active_});
  return new_id;
}

void FactStore::RecordFrameEvent(FrameEvent event) {
  RequireActive(active_);
  event.producer = active_;
  events_.push_back(std::move(event));
}

void FactStore::Warn(int clause, std::string message) {
  warnings_.push_back({active_, clause, std::move(message)});
}

std::vector<Annotation> FactStore::Query(ClauseRange range,
                                         std::optional<CueClass> cls) const {
  std::vector<const Annotation *> hits;
  if (!range.empty()) {
    for (auto it = by_clause_.lower_bound(range.first);
         it != by_clause_.end() && it->first <= range.last; ++it) {
      for (int id : it->second) {
        if (live_[id]) hits.push_back(&annotations_[id]);
      }
    }
  }
  // Same span typed differently by two stages: the later stage wins.
  std::vector<Annotation> out;
  for (const Annotation *a : hits) {
    bool beaten = std::any_of(hits.begin(), hits.end(), [&](const Annotation *b) {
      return b->clause_index == a->clause_index && b->span == a->span &&
             b->cue_class != a->cue_class && b->producer != a->producer &&
             Priority(b->producer) > Priority(a->producer);
    });
    if (beaten) continue;
    if (cls && a->cue_class != *cls) continue;
    out.push_back(*a);
  }
  std::sort(out.begin(), out.end(), [](const Annotation &a, const Annotation &b) {
    return sort_key(a) < sort_key(b);
  });
  return out;
}

const Annotation *FactStore::Find(int id) const {
  if (id < 0 || id >= static_cast<int>(annotations_.size())) return nullptr;
  return &annotations_[id];
}

bool FactStore::IsLive(int id) const {
  return id >= 0 && id < static_cast<int>(live_.size()) && live_[id];
}

std::string format_features(const std::map<std::string, std::string> &features) {
  if (features.empty()) return "-";
  std::string out;
  for (const auto &[k, v] : features) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

std::string dump_cues(const FactStore &store) {
  std::ostringstream out;
  int last = -1;
  for (const Annotation &a : store.annotations()) {
    last = std::max(last, a.clause_index);
  }
  for (const Annotation &a : store.Query({0, last})) {
    out << a.clause_index << '\t' << a.span.begin << ':' << a.span.end << '\t'
        << to_string(a.cue_class) << '\t' << format_features(a.features)
        << '\t' << a.producer << '\n';
  }
  return out.str();
}

std::vector<Annotation> parse_cue_dump(std::string_view dump) {
  std::vector<Annotation> out;
  int line_no = 0;
  for (std::string_view line : text::split(dump, '\n')) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = text::split(line, '\t');
    if (fields.size() != 5) throw FormatError(line_no, "expected 5 fields");
    Annotation a;
    a.id = static_cast<int>(out.size());
    try {
      a.clause_index = std::stoi(std::string(fields[0]));
      size_t colon = fields[1].find(':');
      if (colon == std::string_view::npos) throw FormatError(line_no, "bad span");
      a.span.begin = std::stoul(std::string(fields[1].substr(0, colon)));
      a.span.end = std::stoul(std::string(fields[1].substr(colon + 1)));
    } catch (const std::logic_error &) {
      throw FormatError(line_no, "bad number");
    }
    auto cls = parse_cue_class(fields[2]);
    if (!cls) throw FormatError(line_no, "unknown cue class");
    a.cue_class = *cls;
    if (fields[3] != "-") {
      for (std::string_view kv : text::split(fields[3], ';')) {
        size_t eq = kv.find('=');
        if (eq == std::string_view::npos) throw FormatError(line_no, "bad feature");
        a.features[std::string(kv.substr(0, eq))] = std::string(kv.substr(eq + 1));
      }
    }
    a.producer = std::string(fields[4]);
    out.push_back(std::move(a));
  }
  return out;
}

std::string dump_facts(const FactStore &store) {
  std::ostringstream out;
  out << "# stages:";
  for (const std::string &s : store.stage_log()) out << ' ' << s;
  out << '\n';
  for (const Annotation &a : store.annotations()) {
    out << "fact\t" << a.id << '\t' << (store.IsLive(a.id) ? "live" : "superseded")
        << '\t' << a.clause_index << '\t' << a.span.begin << ':' << a.span.end
        << '\t' << to_string(a.cue_class) << '\t' << format_features(a.features)
        << '\t' << a.producer << '\n';
  }
  for (const SupersedeFact &s : store.supersedes()) {
    out << "supersede\t" << s.old_id << '\t' << s.replacement_id << '\t'
        << s.producer << '\n';
  }
  for (const FrameEvent &e : store.frame_events()) {
    out << "frame\t" << e.frame_id << '\t' << to_string(e.action) << '\t'
        << e.cue_id << '\t' << e.before.first << ".." << e.before.last << '\t'
        << e.after.first << ".." << e.after.last << '\t' << e.producer << '\n';
  }
  for (const StoreWarning &w : store.warnings()) {
    out << "warning\t" << w.clause << '\t' << w.message << '\t' << w.producer
        << '\n';
  }
  return out.str();
}

}  // namespace gemify
