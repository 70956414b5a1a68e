#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace ehrxqa {

/// Civil datetime at second resolution, proleptic Gregorian calendar.
/// Stored as seconds since 1970-01-01 00:00:00 (no timezone, no leap seconds).
class Timestamp {
  public:
    Timestamp() = default;
    explicit Timestamp(std::int64_t seconds) : seconds_(seconds) {}

    static Timestamp from_civil(int year, int month, int day, int hour = 0, int minute = 0,
                                int second = 0);

    /// Accepts "YYYY-MM-DD HH:MM:SS", "YYYY-MM-DD HH:MM" and "YYYY-MM-DD".
    static std::optional<Timestamp> parse(const std::string& text);

    std::int64_t raw() const { return seconds_; }

    int year() const;
    int month() const;
    int day() const;
    int hour() const;
    int minute() const;
    int second() const;

    /// "YYYY-MM-DD HH:MM:SS"
    std::string to_string() const;
    /// "YYYY-MM-DD"
    std::string date_string() const;

    Timestamp add_seconds(std::int64_t s) const { return Timestamp(seconds_ + s); }
    Timestamp add_days(std::int64_t d) const { return Timestamp(seconds_ + d * 86400); }
    /// Calendar-aware; day-of-month clamps (jan 31 + 1 month = feb 28).
    Timestamp add_months(int months) const;
    Timestamp add_years(int years) const { return add_months(years * 12); }

    Timestamp start_of_day() const;
    Timestamp start_of_month() const;
    Timestamp start_of_year() const;

    friend bool operator==(Timestamp a, Timestamp b) { return a.seconds_ == b.seconds_; }
    friend bool operator!=(Timestamp a, Timestamp b) { return a.seconds_ != b.seconds_; }
    friend bool operator<(Timestamp a, Timestamp b) { return a.seconds_ < b.seconds_; }
    friend bool operator<=(Timestamp a, Timestamp b) { return a.seconds_ <= b.seconds_; }
    friend bool operator>(Timestamp a, Timestamp b) { return a.seconds_ > b.seconds_; }
    friend bool operator>=(Timestamp a, Timestamp b) { return a.seconds_ >= b.seconds_; }

    std::int64_t operator-(Timestamp other) const { return seconds_ - other.seconds_; }

  private:
    std::int64_t seconds_ = 0;
};

int days_in_month(int year, int month);

}  // namespace ehrxqa
