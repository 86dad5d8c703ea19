#include "symflow/section.hpp"

#include <algorithm>
#include <set>

#include "symflow/error.hpp"

namespace symflow {

namespace {

std::int64_t wordEnd(const Cylinder& c) { return c.anchor + static_cast<std::int64_t>(c.word.size()); }

// all admissible words on [lo, hi) agreeing with every cylinder (cylinders lie inside)
std::vector<Word> consistentWords(const Subshift& base, std::int64_t lo, std::int64_t hi,
                                  const std::vector<const Cylinder*>& cyls) {
  Word merged(static_cast<std::size_t>(hi - lo), 0);
  std::vector<bool> fixed(merged.size(), false);
  for (const Cylinder* c : cyls)
    for (std::size_t k = 0; k < c->word.size(); ++k) {
      auto idx = static_cast<std::size_t>(c->anchor - lo) + k;
      if (fixed[idx] && merged[idx] != c->word[k]) return {};
      merged[idx] = c->word[k];
      fixed[idx] = true;
    }
  if (std::all_of(fixed.begin(), fixed.end(), [](bool b) { return b; })) {
    if (base.admissible(merged)) return {merged};
    return {};
  }
  std::vector<Word> out;
  for (const Word& w : base.language(merged.size())) {
    bool ok = true;
    for (std::size_t i = 0; i < w.size() && ok; ++i) ok = !fixed[i] || w[i] == merged[i];
    if (ok) out.push_back(w);
  }
  return out;
}

}  // namespace

CrossSection::CrossSection(std::vector<SectionPiece> pieces, std::size_t validityDepth, std::vector<std::string> labelNames)
    : pieces_(std::move(pieces)), depth_(validityDepth), labels_(std::move(labelNames)) {
  if (pieces_.empty()) fail(ErrorCode::InvalidArgument, "cross-section needs at least one piece");
  for (const auto& p : pieces_)
    if (p.offset.sign() < 0) fail(ErrorCode::InvalidArgument, "negative section offset");
}

CrossSection CrossSection::baseSection() {
  return CrossSection({SectionPiece{Cylinder{0, {}}, QuadraticReal(0), 0}}, 0, {"base"});
}

std::string CrossSection::labelName(std::size_t label) const {
  if (label < labels_.size()) return labels_[label];
  return std::to_string(label);
}

std::optional<std::size_t> CrossSection::pieceAt(const FlowPoint& p) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (pieces_[i].offset == p.height && pieces_[i].cylinder.contains(p.base)) return i;
  return std::nullopt;
}

void CrossSection::validate(const SuspensionFlow& f) const {
  const auto m = static_cast<std::int64_t>(f.roof().radius());
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto& c = pieces_[i].cylinder;
    if (!c.word.empty() && !f.base().admissible(c.word))
      fail(ErrorCode::InvalidArgument, "section piece " + std::to_string(i) + " has an inadmissible cylinder");
    std::int64_t lo = std::min(-m, c.word.empty() ? -m : c.anchor);
    std::int64_t hi = std::max(m + 1, c.word.empty() ? m + 1 : wordEnd(c));
    std::vector<const Cylinder*> cyls;
    if (!c.word.empty()) cyls.push_back(&c);
    for (const Word& w : consistentWords(f.base(), lo, hi, cyls)) {
      Word win(w.begin() + (-m - lo), w.begin() + (m + 1 - lo));
      if (pieces_[i].offset >= f.roof().valueOn(win))
        fail(ErrorCode::InvalidArgument, "section piece " + std::to_string(i) + " offset reaches the roof");
    }
  }
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    for (std::size_t j = i + 1; j < pieces_.size(); ++j) {
      if (pieces_[i].offset != pieces_[j].offset) continue;
      const auto& a = pieces_[i].cylinder;
      const auto& b = pieces_[j].cylinder;
      if (a.word.empty() || b.word.empty())
        fail(ErrorCode::InvalidArgument, "whole-base piece overlaps another piece at equal offset");
      std::int64_t lo = std::min(a.anchor, b.anchor), hi = std::max(wordEnd(a), wordEnd(b));
      if (!consistentWords(f.base(), lo, hi, {&a, &b}).empty())
        fail(ErrorCode::InvalidArgument,
             "section pieces " + std::to_string(i) + " and " + std::to_string(j) + " overlap at equal offset");
    }
}

SectionCertificate CrossSection::certifyGlobal(const SuspensionFlow& f, std::size_t depth) const {
  SectionCertificate cert;
  cert.depth = depth;
  for (const auto& p : pieces_)
    if (p.cylinder.word.empty()) {
      cert.global = true;
      cert.hittingTimeBound = f.roof().isTable() ? f.roof().maxValue() : QuadraticReal(0);
      return cert;
    }
  std::int64_t minA = pieces_[0].cylinder.anchor, maxE = wordEnd(pieces_[0].cylinder);
  for (const auto& p : pieces_) {
    minA = std::min(minA, p.cylinder.anchor);
    maxE = std::max(maxE, wordEnd(p.cylinder));
  }
  std::set<Word> words;
  for (const auto& p : pieces_) words.insert(p.cylinder.word);
  cert.global = true;
  for (const Word& w : f.base().language(depth)) {
    bool hit = false;
    for (const Word& pw : words)
      if (containsFactor(w, pw)) {
        hit = true;
        break;
      }
    if (!hit) {
      cert.global = false;
      break;
    }
  }
  if (cert.global && f.roof().isTable())
    cert.hittingTimeBound = f.roof().maxValue() * QuadraticReal(static_cast<long>(depth + (maxE - minA)));
  return cert;
}

ReturnWalker::ReturnWalker(const SuspensionFlow& f, const CrossSection& s, const FlowPoint& start, std::size_t maxBaseShifts)
    : flow_(f), section_(s), x_(start.base), height_(start.height), maxShifts_(maxBaseShifts) {
  bool first = true;
  for (std::size_t i = 0; i < s.pieces().size(); ++i) {
    const auto& c = s.pieces()[i].cylinder;
    if (c.word.empty()) {
      wholeBase_.push_back(i);
      continue;
    }
    byWord_[c.word].emplace_back(c.anchor, i);
    if (first) {
      minAnchor_ = c.anchor;
      maxEnd_ = wordEnd(c);
      first = false;
    } else {
      minAnchor_ = std::min(minAnchor_, c.anchor);
      maxEnd_ = std::max(maxEnd_, wordEnd(c));
    }
  }
}

void ReturnWalker::extend() {
  const std::int64_t from = slotBase_ + static_cast<std::int64_t>(slots_.size());
  const auto len = static_cast<std::int64_t>(chunk_);
  const std::int64_t to = from + len;
  auto roofs = flow_.roof().values(x_, from, to);
  std::vector<Slot> fresh(static_cast<std::size_t>(len));
  for (std::int64_t i = 0; i < len; ++i) fresh[static_cast<std::size_t>(i)].roof = roofs[static_cast<std::size_t>(i)];
  for (std::size_t piece : wholeBase_)
    for (auto& sl : fresh) sl.hits.emplace_back(section_.pieces()[piece].offset, piece);
  if (!byWord_.empty()) {
    // coordinate i meets cylinder (a, u) iff u starts at i + a
    const std::int64_t wlo = from + minAnchor_;
    const std::int64_t whi = to - 1 + maxEnd_;
    Word w = x_.window(wlo, whi);
    for (const auto& [word, entries] : byWord_) {
      for (std::size_t pos : occurrences(w, word)) {
        const std::int64_t start = wlo + static_cast<std::int64_t>(pos);
        for (const auto& [anchor, piece] : entries) {
          const std::int64_t c = start - anchor;
          if (c >= from && c < to)
            fresh[static_cast<std::size_t>(c - from)].hits.emplace_back(section_.pieces()[piece].offset, piece);
        }
      }
    }
  }
  for (auto& sl : fresh) {
    std::sort(sl.hits.begin(), sl.hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    slots_.push_back(std::move(sl));
  }
  chunk_ = std::min<std::size_t>(chunk_ * 2, 8192);
}

const ReturnWalker::Slot& ReturnWalker::slot(std::int64_t c) {
  while (c >= slotBase_ + static_cast<std::int64_t>(slots_.size())) extend();
  // drop slots behind the walker
  while (slotBase_ < coord_ && !slots_.empty()) {
    slots_.pop_front();
    ++slotBase_;
  }
  return slots_[static_cast<std::size_t>(c - slotBase_)];
}

ReturnEvent ReturnWalker::next() {
  QuadraticReal t;
  std::size_t shifts = 0;
  {
    const Slot& s = slot(coord_);
    for (const auto& [off, piece] : s.hits)
      if (off > height_) {
        t = off - height_;
        height_ = off;
        elapsed_ += t;
        return {t, FlowPoint{x_.shifted(coord_), off}, piece, coord_};
      }
    t = s.roof - height_;
  }
  while (true) {
    ++coord_;
    if (++shifts > maxShifts_) fail(ErrorCode::NotHit, "no section hit within the base-shift bound");
    const Slot& s = slot(coord_);
    if (!s.hits.empty()) {
      const auto& [off, piece] = s.hits.front();
      t += off;
      height_ = off;
      elapsed_ += t;
      return {t, FlowPoint{x_.shifted(coord_), off}, piece, coord_};
    }
    t += s.roof;
  }
}

ReturnEvent returnToSection(const SuspensionFlow& f, const FlowPoint& p, const CrossSection& s, std::size_t maxReturns) {
  ReturnWalker w(f, s, p, maxReturns);
  return w.next();
}

std::vector<PieceSpectrum> returnTimeSpectrum(const SuspensionFlow& f, const CrossSection& s, const FlowPoint& start,
                                              std::size_t returns) {
  ReturnWalker w(f, s, start);
  ReturnEvent prev = w.next();
  std::map<std::size_t, PieceSpectrum> acc;
  for (std::size_t i = 0; i < returns; ++i) {
    ReturnEvent e = w.next();
    auto [it, fresh] = acc.try_emplace(prev.piece);
    auto& sp = it->second;
    sp.piece = prev.piece;
    if (fresh || e.time < sp.min) sp.min = e.time;
    if (fresh || e.time > sp.max) sp.max = e.time;
    ++sp.count;
    prev = e;
  }
  std::vector<PieceSpectrum> out;
  for (auto& [k, v] : acc) out.push_back(v);
  return out;
}

}  // namespace symflow
