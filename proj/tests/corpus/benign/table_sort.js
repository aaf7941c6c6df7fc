// Click-to-sort for data tables. Numeric columns sort numerically.
function sortTable(table, column, numeric) {
    var body = table.tBodies[0];
    var rows = Array.prototype.slice.call(body.rows);
    rows.sort(function (a, b) {
        var left = a.cells[column].textContent;
        var right = b.cells[column].textContent;
        if (numeric) return parseFloat(left) - parseFloat(right);
        return left < right ? -1 : left > right ? 1 : 0;
    });
    for (var i = 0; i < rows.length; i++) {
        body.appendChild(rows[i]);
    }
}
