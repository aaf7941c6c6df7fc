// Converts between #rrggbb strings and rgb triples for the theme editor.
function hexToRgb(hex) {
    var raw = hex.charAt(0) === "#" ? hex.slice(1) : hex;
    if (raw.length === 3) {
        raw = raw.charAt(0) + raw.charAt(0) + raw.charAt(1) + raw.charAt(1) +
            raw.charAt(2) + raw.charAt(2);
    }
    var value = parseInt(raw, 16);
    return [value >> 16 & 255, value >> 8 & 255, value & 255];
}

function rgbToHex(r, g, b) {
    function part(n) {
        var h = n.toString(16);
        return h.length === 1 ? "0" + h : h;
    }
    return "#" + part(r) + part(g) + part(b);
}
