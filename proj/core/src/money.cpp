#include "circuitforge/money.hpp"

#include "circuitforge/error.hpp"

namespace circuitforge {

Money Money::parse(std::string_view text, std::string currency) {
  auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    auto tail = text.substr(dot + 1);
    while (!tail.empty() && (tail.back() == ' ' || tail.back() == '\r')) tail.remove_suffix(1);
    if (tail.size() > 2) throw Error(Errc::ParseError, "money has more than two decimals: '" + std::string(text) + "'");
  }
  const Decimal d = Decimal::parse(text);
  return Money(d.micros() / 10'000, std::move(currency));
}

std::string Money::to_string() const { return Decimal::from_micros(cents_ * 10'000).to_string(2); }

void Money::check(const Money& o) const {
  if (currency_ != o.currency_)
    throw Error(Errc::CurrencyMismatch, "'" + currency_ + "' vs '" + o.currency_ + "'");
}

Money Money::operator+(const Money& o) const {
  check(o);
  return Money(cents_ + o.cents_, currency_);
}

Money Money::operator-(const Money& o) const {
  check(o);
  return Money(cents_ - o.cents_, currency_);
}

Money& Money::operator+=(const Money& o) {
  check(o);
  cents_ += o.cents_;
  return *this;
}

Money& Money::operator-=(const Money& o) {
  check(o);
  cents_ -= o.cents_;
  return *this;
}

Money Money::operator*(Decimal factor) const {
  return Money(div_round_half_up(static_cast<int128>(cents_) * factor.micros(), Decimal::kScale), currency_);
}

Decimal Money::ratio(const Money& denominator) const {
  check(denominator);
  if (denominator.cents_ == 0) throw Error(Errc::InvalidArgument, "ratio with zero denominator");
  return Decimal::from_micros(div_round_half_up(static_cast<int128>(cents_) * Decimal::kScale, denominator.cents_));
}

bool Money::operator==(const Money& o) const {
  check(o);
  return cents_ == o.cents_;
}

std::strong_ordering Money::operator<=>(const Money& o) const {
  check(o);
  return cents_ <=> o.cents_;
}

}  // namespace circuitforge
