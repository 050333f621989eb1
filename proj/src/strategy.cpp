#include "gsel/strategy.hpp"

namespace gsel {

namespace {

void CheckMemory(int k) {
  if (k < 1 || k > kMaxMemory)
    throw InvalidInput("memory length k must be in [1, " + std::to_string(kMaxMemory) + "], got " +
                       std::to_string(k));
}

uint64_t LowMask(size_t len) { return len >= 64 ? ~uint64_t{0} : (uint64_t{1} << len) - 1; }

}  // namespace

Strategy::Strategy(int k, uint64_t bits) : k_(k), bits_(bits) {
  CheckMemory(k);
  if (bits & ~LowMask(Length()))
    throw InvalidInput("strategy bits exceed length " + std::to_string(Length()));
}

Strategy Strategy::Parse(std::string_view text, int k) {
  CheckMemory(k);
  const size_t len = LengthFor(k);
  if (text.size() != len)
    throw InvalidInput("strategy '" + std::string(text) + "' has length " + std::to_string(text.size()) +
                       ", expected " + std::to_string(len) + " for k=" + std::to_string(k));
  uint64_t bits = 0;
  for (size_t i = 0; i < len; ++i) {
    if (text[i] == '1') bits |= uint64_t{1} << i;
    else if (text[i] != '0')
      throw InvalidInput("strategy '" + std::string(text) + "' contains a character other than 0/1");
  }
  return Strategy(k, bits);
}

Strategy Strategy::AllCooperate(int k) {
  CheckMemory(k);
  return Strategy(k, LowMask(LengthFor(k)));
}

Strategy Strategy::AllDefect(int k) { return Strategy(k, 0); }

uint32_t Strategy::InitialWindow() const {
  uint32_t w = 0;
  for (int i = 0; i < k_; ++i) w = (w << 1) | static_cast<uint32_t>(At(static_cast<size_t>(i)));
  return w;
}

Strategy Strategy::Complement() const {
  const uint32_t states = 1u << k_;
  uint64_t out = 0;
  for (int i = 0; i < k_; ++i)
    if (At(static_cast<size_t>(i)) == Action::Defect) out |= uint64_t{1} << i;
  for (uint32_t h = 0; h < states; ++h) {
    const uint32_t mirrored = ~h & (states - 1u);
    if (Respond(mirrored) == Action::Defect) out |= uint64_t{1} << (static_cast<uint32_t>(k_) + h);
  }
  return Strategy(k_, out);
}

std::string Strategy::ToString() const {
  std::string s(Length(), '0');
  for (size_t i = 0; i < s.size(); ++i)
    if (At(i) == Action::Cooperate) s[i] = '1';
  return s;
}

std::string HistoryWindow::ToString() const {
  std::string s;
  for (int i = 0; i < k_; ++i) s.push_back(ToChar(At(i)));
  return s;
}

Action Decide(const Strategy& s, const HistoryWindow& w) {
  if (w.Memory() != s.Memory())
    throw InvalidInput("history window length " + std::to_string(w.Memory()) +
                       " does not match strategy memory " + std::to_string(s.Memory()));
  return s.Respond(w.State());
}

}  // namespace gsel
