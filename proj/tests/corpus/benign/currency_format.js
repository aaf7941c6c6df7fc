// Money formatting for the order summary. Cents in, display string out.
function formatCents(cents, symbol) {
    var negative = cents < 0;
    var whole = Math.floor(Math.abs(cents) / 100);
    var frac = Math.abs(cents) % 100;
    var digits = String(whole).split("");
    for (var i = digits.length - 3; i > 0; i -= 3) {
        digits.splice(i, 0, ",");
    }
    var text = (symbol || "$") + digits.join("") + "." + (frac < 10 ? "0" + frac : frac);
    return negative ? "-" + text : text;
}
